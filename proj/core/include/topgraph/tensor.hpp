#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "topgraph/common.hpp"

namespace topgraph {

/// Dense row-major matrix of float64. Row-major matches the archive blob
/// layout and the global flat-index convention.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows*cols, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
};

/// Dense row-major order-J tensor of float64. The last dimension varies
/// fastest, consistent with flat_index().
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> dims);
    Tensor(std::vector<std::size_t> dims, std::vector<double> values);

    std::size_t order() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return values_.size(); }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double operator[](std::size_t flat) const { return values_[flat]; }
    double& operator[](std::size_t flat) { return values_[flat]; }

    double at(std::span<const std::size_t> idx) const {
        return values_[static_cast<std::size_t>(flat_index(dims_, idx))];
    }
    double& at(std::span<const std::size_t> idx) {
        return values_[static_cast<std::size_t>(flat_index(dims_, idx))];
    }

    void fill(double v);
    bool same_shape(const Tensor& other) const { return dims_ == other.dims_; }

    static Tensor zeros_like(const Tensor& t) { return Tensor(t.dims()); }

private:
    std::vector<std::size_t> dims_;
    std::vector<double> values_;
};

/// out[..., i, ...] = sum_a M(i, a) * t[..., a, ...] along `mode`;
/// M is r x dims[mode], the result has dims[mode] replaced by r.
Tensor mode_multiply(const Tensor& t, const Matrix& m, std::size_t mode);

/// Contract the leading mode with a vector: out[rest] = sum_k v[k] * t[k, rest...].
/// Repeated application scores one tuple in O(prod d_j).
std::vector<double> contract_first_mode(std::span<const double> values,
                                        std::span<const std::size_t> dims,
                                        std::span<const double> v);

/// Rank-1 tensor from J row vectors: out[k_1,...,k_J] = prod_j rows[j][k_j].
Tensor outer_product(std::span<const std::span<const double>> rows);

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace topgraph
