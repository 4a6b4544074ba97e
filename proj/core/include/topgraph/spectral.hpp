#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topgraph/graphio.hpp"
#include "topgraph/tensor.hpp"

namespace topgraph {

/// Top-d eigenpairs of one graph: lambdas descending, vectors column-orthonormal
/// (column k of the n x d matrix is the k-th eigenvector). Each eigenvector is
/// scaled so its largest-magnitude entry is positive.
struct EigenSystem {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> lambdas;  // size d, descending
    Matrix vectors;               // n x d, row-major

    std::span<const double> vertex_row(std::size_t i) const { return vectors.row(i); }
};

struct EigenOptions {
    std::uint64_t seed = 0;
    /// Dense eigendecomposition is used whenever n <= dense_threshold.
    std::size_t dense_threshold = 512;
    /// Residual target for the iterative path: ||A v - lambda v|| <= tol * max(1, |lambda|).
    double tol = 1e-8;
    /// Basis growth cap as a multiple of d (bounded by n).
    std::size_t max_basis = 0;  // 0 = automatic
};

/// Returns the d algebraically largest eigenpairs of the (symmetric) graph.
/// Deterministic for a fixed seed. Throws NonConvergence with the achieved
/// residuals if the iterative solver cannot meet the tolerance.
EigenSystem top_eigensystem(const SparseGraph& g, std::size_t d, const EigenOptions& opts = {});

enum class EnergyMode { Absolute, Squared };

/// Smallest d such that the cumulative energy of the leading eigenvalues
/// reaches coverage * total. Energy is |lambda| by default (configurable to
/// lambda^2).
std::size_t select_rank_by_energy(std::span<const double> lambdas_full, double coverage,
                                  EnergyMode mode = EnergyMode::Absolute);

/// Overload for a precomputed total (e.g. a trace-based estimate): smallest d
/// within the given prefix reaching coverage * total_energy.
std::size_t select_rank_by_energy(std::span<const double> lambdas_prefix, double coverage,
                                  double total_energy, EnergyMode mode);

/// Full spectrum of a graph, descending (dense path; desk scale).
std::vector<double> full_spectrum(const SparseGraph& g);

}  // namespace topgraph
