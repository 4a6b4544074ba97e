#include "topgraph/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace topgraph {

Tensor::Tensor(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    std::uint64_t n = checked_product(dims_);
    if (n == std::numeric_limits<std::uint64_t>::max()) throw_data("tensor shape overflows");
    values_.assign(static_cast<std::size_t>(n), 0.0);
}

Tensor::Tensor(std::vector<std::size_t> dims, std::vector<double> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
    if (checked_product(dims_) != values_.size()) throw_data("tensor value count does not match dims");
}

void Tensor::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

Tensor mode_multiply(const Tensor& t, const Matrix& m, std::size_t mode) {
    const auto& dims = t.dims();
    if (mode >= dims.size()) throw_internal("mode_multiply: mode out of range");
    if (m.cols != dims[mode]) throw_data("mode_multiply: matrix cols do not match tensor dim");

    std::size_t outer = 1, inner = 1;
    for (std::size_t j = 0; j < mode; ++j) outer *= dims[j];
    for (std::size_t j = mode + 1; j < dims.size(); ++j) inner *= dims[j];
    const std::size_t nd = dims[mode];

    std::vector<std::size_t> out_dims = dims;
    out_dims[mode] = m.rows;
    Tensor out(out_dims);

    const double* src = t.values().data();
    double* dst = out.values().data();
    for (std::size_t o = 0; o < outer; ++o) {
        const double* blk = src + o * nd * inner;
        double* oblk = dst + o * m.rows * inner;
        for (std::size_t i = 0; i < m.rows; ++i) {
            const double* mrow = m.data.data() + i * m.cols;
            double* orow = oblk + i * inner;
            for (std::size_t a = 0; a < nd; ++a) {
                const double w = mrow[a];
                if (w == 0.0) continue;
                const double* srow = blk + a * inner;
                for (std::size_t s = 0; s < inner; ++s) orow[s] += w * srow[s];
            }
        }
    }
    return out;
}

std::vector<double> contract_first_mode(std::span<const double> values,
                                        std::span<const std::size_t> dims,
                                        std::span<const double> v) {
    std::size_t rest = 1;
    for (std::size_t j = 1; j < dims.size(); ++j) rest *= dims[j];
    std::vector<double> out(rest, 0.0);
    for (std::size_t k = 0; k < dims[0]; ++k) {
        const double w = v[k];
        const double* blk = values.data() + k * rest;
        for (std::size_t s = 0; s < rest; ++s) out[s] += w * blk[s];
    }
    return out;
}

Tensor outer_product(std::span<const std::span<const double>> rows) {
    std::vector<std::size_t> dims;
    dims.reserve(rows.size());
    for (const auto& r : rows) dims.push_back(r.size());

    std::vector<double> cur{1.0};
    for (const auto& r : rows) {
        std::vector<double> next(cur.size() * r.size());
        std::size_t p = 0;
        for (double c : cur)
            for (double x : r) next[p++] = c * x;
        cur = std::move(next);
    }
    return Tensor(std::move(dims), std::move(cur));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double squared_norm(std::span<const double> a) { return dot(a, a); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace topgraph
