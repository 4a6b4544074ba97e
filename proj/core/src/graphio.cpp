#include "topgraph/graphio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

namespace topgraph {

namespace {

constexpr double kDuplicateTol = 1e-12;

struct Entry {
    std::size_t i, j;
    double w;
    std::size_t line;  // 1-based source line, 0 when synthetic
};

// Assembles CSR from directed entries; detects conflicting duplicates.
SparseGraph assemble(std::size_t n, std::vector<Entry>& entries, bool normalized) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });

    SparseGraph g;
    g.n = n;
    g.normalized = normalized;
    g.row_ptr.assign(n + 1, 0);
    g.col.reserve(entries.size());
    g.weight.reserve(entries.size());

    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Entry& e = entries[k];
        if (k > 0 && entries[k - 1].i == e.i && entries[k - 1].j == e.j) {
            if (std::abs(entries[k - 1].w - e.w) > kDuplicateTol) {
                throw_data("conflicting duplicate edge (" + std::to_string(e.i) + "," +
                           std::to_string(e.j) + ") at line " + std::to_string(e.line) +
                           ": weights " + std::to_string(entries[k - 1].w) + " vs " +
                           std::to_string(e.w));
            }
            continue;
        }
        g.col.push_back(e.j);
        g.weight.push_back(e.w);
        ++g.row_ptr[e.i + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.row_ptr[i + 1] += g.row_ptr[i];
    return g;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t p = 0;
    while (p < line.size()) {
        while (p < line.size() && (line[p] == '\t' || line[p] == ' ' || line[p] == '\r')) ++p;
        std::size_t q = p;
        while (q < line.size() && line[q] != '\t' && line[q] != ' ' && line[q] != '\r') ++q;
        if (q > p) out.push_back(line.substr(p, q - p));
        p = q;
    }
    return out;
}

std::size_t parse_index(std::string_view tok, std::size_t line_no) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw_data("malformed index '" + std::string(tok) + "' at line " + std::to_string(line_no));
    return v;
}

double parse_weight(std::string_view tok, std::size_t line_no) {
    char buf[64];
    if (tok.size() >= sizeof(buf))
        throw_data("malformed weight at line " + std::to_string(line_no));
    std::copy(tok.begin(), tok.end(), buf);
    buf[tok.size()] = '\0';
    char* end = nullptr;
    double v = std::strtod(buf, &end);
    if (end != buf + tok.size() || !std::isfinite(v))
        throw_data("malformed weight '" + std::string(tok) + "' at line " + std::to_string(line_no));
    return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t start = 0, line_no = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        fn(text.substr(start, end - start), line_no);
        if (end == text.size()) break;
        start = end + 1;
    }
}

}  // namespace

double SparseGraph::edge_weight(std::size_t i, std::size_t j) const {
    auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
    auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return weight[static_cast<std::size_t>(it - col.begin())];
}

double SparseGraph::degree(std::size_t i) const {
    double s = 0.0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col[k] != i) s += weight[k];
    return s;
}

void SparseGraph::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += weight[k] * x[col[k]];
        y[i] = s;
    }
}

SparseGraph SparseGraph::from_triplets(
    std::size_t n, std::span<const std::tuple<std::size_t, std::size_t, double>> entries) {
    std::vector<Entry> dir;
    dir.reserve(entries.size() * 2);
    for (const auto& [i, j, w] : entries) {
        if (i >= n || j >= n) throw_data("triplet index out of range");
        if (w < 0.0 || !std::isfinite(w)) throw_data("triplet weight negative or non-finite");
        dir.push_back({i, j, w, 0});
        if (i != j) dir.push_back({j, i, w, 0});
    }
    return assemble(n, dir, false);
}

SparseGraph load_edge_list(std::string_view text, std::size_t n) {
    std::vector<Entry> dir;
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#') return;
        if (tokens.size() != 3)
            throw_data("expected `i<TAB>j<TAB>w` at line " + std::to_string(line_no));
        std::size_t i = parse_index(tokens[0], line_no);
        std::size_t j = parse_index(tokens[1], line_no);
        double w = parse_weight(tokens[2], line_no);
        if (i >= n || j >= n)
            throw_data("vertex index out of range (n=" + std::to_string(n) + ") at line " +
                       std::to_string(line_no));
        if (w < 0.0) throw_data("negative weight at line " + std::to_string(line_no));
        dir.push_back({i, j, w, line_no});
        if (i != j) dir.push_back({j, i, w, line_no});
    });
    return assemble(n, dir, false);
}

std::optional<std::size_t> parse_edge_list_header(std::string_view text) {
    std::optional<std::size_t> result;
    for_each_line(text, [&](std::string_view line, std::size_t) {
        if (result) return;
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() != '#') return;
        for (auto tok : tokens) {
            if (tok.starts_with("n=")) {
                std::size_t v = 0;
                auto body = tok.substr(2);
                auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
                if (ec == std::errc{} && p == body.data() + body.size()) result = v;
            }
        }
    });
    return result;
}

std::string write_edge_list(const SparseGraph& g, bool with_header) {
    std::string out;
    if (with_header) out += "# n=" + std::to_string(g.n) + "\n";
    char buf[96];
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t k = g.row_ptr[i]; k < g.row_ptr[i + 1]; ++k) {
            if (g.col[k] < i) continue;  // emit each undirected edge once
            std::snprintf(buf, sizeof(buf), "%zu\t%zu\t%.17g\n", i, g.col[k], g.weight[k]);
            out += buf;
        }
    }
    return out;
}

SparseGraph knn_sparsify(const SparseGraph& g, double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0) throw_usage("knn fraction must be in (0, 1]");
    const std::size_t k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(g.n))));

    // Selected directed edges; an undirected edge survives if either
    // endpoint ranks it in its top k.
    std::vector<std::pair<std::size_t, std::size_t>> selected;
    std::vector<std::pair<double, std::size_t>> nbrs;
    for (std::size_t i = 0; i < g.n; ++i) {
        nbrs.clear();
        for (std::size_t e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e)
            if (g.col[e] != i) nbrs.emplace_back(g.weight[e], g.col[e]);
        std::sort(nbrs.begin(), nbrs.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;  // larger weight first
            return a.second < b.second;                        // ties: lower index
        });
        const std::size_t keep = std::min(k, nbrs.size());
        for (std::size_t t = 0; t < keep; ++t) {
            auto [w, j] = nbrs[t];
            selected.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

    std::vector<Entry> dir;
    dir.reserve(selected.size() * 2 + g.n);
    for (auto [i, j] : selected) {
        double w = g.edge_weight(i, j);
        dir.push_back({i, j, w, 0});
        dir.push_back({j, i, w, 0});
    }
    for (std::size_t i = 0; i < g.n; ++i) {
        double self = g.edge_weight(i, i);
        if (self != 0.0) dir.push_back({i, i, self, 0});
    }
    return assemble(g.n, dir, g.normalized);
}

SparseGraph symmetric_normalize(const SparseGraph& g) {
    std::vector<double> inv_sqrt(g.n, 0.0);
    for (std::size_t i = 0; i < g.n; ++i) {
        double d = g.degree(i);
        inv_sqrt[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
    }
    std::vector<Entry> dir;
    dir.reserve(g.nnz());
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t k = g.row_ptr[i]; k < g.row_ptr[i + 1]; ++k) {
            std::size_t j = g.col[k];
            if (j == i) continue;  // self-loops dropped before normalization
            dir.push_back({i, j, g.weight[k] * inv_sqrt[i] * inv_sqrt[j], 0});
        }
    }
    return assemble(g.n, dir, true);
}

TupleSet::TupleSet(std::vector<std::size_t> dims, std::vector<Tuple> tuples) : dims_(std::move(dims)) {
    if (dims_.empty()) throw_data("tuple set needs at least one dimension");
    ids_.reserve(tuples.size());
    for (const auto& t : tuples) {
        if (t.size() != dims_.size())
            throw_data("tuple arity " + std::to_string(t.size()) + " does not match J=" +
                       std::to_string(dims_.size()));
        for (std::size_t j = 0; j < t.size(); ++j)
            if (t[j] >= dims_[j])
                throw_data("tuple index " + std::to_string(t[j]) + " out of range for mode " +
                           std::to_string(j));
        ids_.push_back(flat_index(dims_, t));
    }
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    lookup_.insert(ids_.begin(), ids_.end());
}

TupleSet::TupleSet(std::vector<std::size_t> dims, std::vector<std::uint64_t> flat_ids)
    : dims_(std::move(dims)), ids_(std::move(flat_ids)) {
    if (dims_.empty()) throw_data("tuple set needs at least one dimension");
    const std::uint64_t total = checked_product(dims_);
    for (auto id : ids_)
        if (id >= total) throw_data("flat tuple id out of range");
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    lookup_.insert(ids_.begin(), ids_.end());
}

TupleSet load_tuples(std::string_view text, std::vector<std::size_t> dims) {
    std::vector<Tuple> tuples;
    const std::size_t arity = dims.size();
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#') return;
        if (tokens.size() != arity)
            throw_data("expected " + std::to_string(arity) + " indices at line " +
                       std::to_string(line_no));
        Tuple t(arity);
        for (std::size_t j = 0; j < arity; ++j) {
            t[j] = parse_index(tokens[j], line_no);
            if (t[j] >= dims[j])
                throw_data("tuple index out of range at line " + std::to_string(line_no));
        }
        tuples.push_back(std::move(t));
    });
    return TupleSet(std::move(dims), std::move(tuples));
}

std::string write_tuples(const TupleSet& tuples) {
    std::string out;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        Tuple t = tuples.tuple_at(i);
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j) out += '\t';
            out += std::to_string(t[j]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace topgraph
