#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topgraph/spectral.hpp"
#include "topgraph/tensor.hpp"

namespace topgraph {

/// Division floor for kappa entries, shared by every module that divides by
/// kappa. Entries below the floor are clamped up and the clamp is counted,
/// never silent.
inline constexpr double kKappaFloor = 1e-8;

enum class KappaVariant { Tensor, Cartesian, Exponential, Flat, Nonparametric };

std::string to_string(KappaVariant v);
KappaVariant kappa_variant_from_string(const std::string& name);

/// Explicit coupling tensor kappa in R^{d_1 x ... x d_J}; entries nonnegative
/// and finite.
struct KappaTensor {
    Tensor values;

    const std::vector<std::size_t>& dims() const { return values.dims(); }
    void validate() const;
};

/// The coupling function kappa: parametric, or an explicit nonparametric
/// tensor (index-based; produced by the adaptive loop).
struct KappaSpec {
    KappaVariant variant = KappaVariant::Flat;
    std::optional<KappaTensor> payload;  // Nonparametric only

    static KappaSpec parametric(KappaVariant v);
    static KappaSpec nonparametric(KappaTensor t);
};

/// Evaluates a parametric kappa on one eigenvalue tuple.
///   Tensor      prod_j lambda_j
///   Cartesian   sum_j lambda_j
///   Exponential exp(sum lambda) for J<=2, exp(sum of pairwise products) for J=3
///   Flat        1
/// Exponential with J >= 4 and Nonparametric specs are rejected.
double kappa_eval(const KappaSpec& spec, std::span<const double> lambdas);

struct KappaBuildResult {
    KappaTensor tensor;
    std::size_t clamped = 0;  // entries raised to kKappaFloor
};

/// Entry-wise kappa over the retained-eigenvalue grid. Parametric values
/// below kKappaFloor are clamped (counted); a Nonparametric spec returns its
/// payload unchanged after a dims check.
KappaBuildResult build_kappa_tensor(const KappaSpec& spec, std::span<const EigenSystem> systems);

/// Dense SGP adjacency sum_t kappa(lambda_t) (x_t)(x_t)^T with x_t the
/// Kronecker product of eigenvectors, vertex tuples flattened row-major.
/// Oracle only: requires full eigensystems (d == n) and prod n_j <= 4096.
/// kappa is evaluated raw (no clamping) so the Tensor/Cartesian identities
/// with the Kronecker product/sum hold exactly.
Matrix materialize_sgp_dense(std::span<const EigenSystem> systems_full, const KappaSpec& spec);

}  // namespace topgraph
