#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "topgraph/common.hpp"

namespace topgraph {

/// Symmetric weighted adjacency in a CSR-style layout. Both (i,j) and (j,i)
/// are stored; columns within a row are sorted ascending.
struct SparseGraph {
    std::size_t n = 0;
    std::vector<std::size_t> row_ptr;  // n+1
    std::vector<std::size_t> col;      // nnz
    std::vector<double> weight;        // nnz
    bool normalized = false;

    std::size_t nnz() const { return col.size(); }

    /// Weight of (i,j), 0 if the edge is absent. Binary search within row i.
    double edge_weight(std::size_t i, std::size_t j) const;

    /// Row sum over off-diagonal entries (the degree used for normalization).
    double degree(std::size_t i) const;

    /// y = A x (symmetric matvec over the stored entries).
    void multiply(std::span<const double> x, std::span<double> y) const;

    static SparseGraph from_triplets(std::size_t n,
                                     std::span<const std::tuple<std::size_t, std::size_t, double>> entries);
};

/// Builds a graph from an edge-list document: `i<TAB>j<TAB>w` per line,
/// `#` comments ignored. Entries are symmetrized; duplicate (i,j) with
/// conflicting weights (beyond 1e-12) is a data error reporting the line.
SparseGraph load_edge_list(std::string_view text, std::size_t n);

/// Extracts an optional `# n=<N>` header from an edge-list document.
std::optional<std::size_t> parse_edge_list_header(std::string_view text);

/// One line per undirected edge (i <= j), self-loops included.
std::string write_edge_list(const SparseGraph& g, bool with_header = true);

/// Keeps, per vertex, the edges to its k = max(1, round(fraction*n)) largest
/// neighbors (ties broken by lower index) and re-symmetrizes by union: an
/// edge survives if either endpoint selects it. Self-loops pass through.
SparseGraph knn_sparsify(const SparseGraph& g, double fraction);

/// D^{-1/2} A D^{-1/2} with D the off-diagonal row-sum degree matrix.
/// Self-loops are dropped first; isolated vertices keep zero rows.
SparseGraph symmetric_normalize(const SparseGraph& g);

/// Observed multi-relations O over the cross-graph index grid. Tuples are
/// held as row-major flat ids, sorted ascending, with a hash set for O(1)
/// membership tests.
class TupleSet {
public:
    TupleSet() = default;
    TupleSet(std::vector<std::size_t> dims, std::vector<Tuple> tuples);
    TupleSet(std::vector<std::size_t> dims, std::vector<std::uint64_t> flat_ids);

    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t order() const { return dims_.size(); }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }

    /// Total number of grid cells (saturates at uint64 max).
    std::uint64_t grid_size() const { return checked_product(dims_); }

    bool contains(std::uint64_t flat) const { return lookup_.count(flat) != 0; }
    bool contains(std::span<const std::size_t> t) const { return contains(flat_index(dims_, t)); }

    const std::vector<std::uint64_t>& flat_ids() const { return ids_; }
    Tuple tuple_at(std::size_t i) const { return unflatten(dims_, ids_[i]); }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::uint64_t> ids_;  // sorted, unique
    std::unordered_set<std::uint64_t> lookup_;
};

/// Parses a tuple document: J tab-separated 0-based indices per line,
/// `#` comments allowed. Duplicates are collapsed.
TupleSet load_tuples(std::string_view text, std::vector<std::size_t> dims);

std::string write_tuples(const TupleSet& tuples);

}  // namespace topgraph
