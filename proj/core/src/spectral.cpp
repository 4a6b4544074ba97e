#include "topgraph/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "topgraph/rng.hpp"

namespace topgraph {

namespace {

Eigen::MatrixXd to_dense(const SparseGraph& g) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.n),
                                              static_cast<Eigen::Index>(g.n));
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t k = g.row_ptr[i]; k < g.row_ptr[i + 1]; ++k)
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(g.col[k])) = g.weight[k];
    return a;
}

// Largest-magnitude entry made positive; first occurrence wins on ties.
void fix_sign(std::span<double> v) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            arg = i;
        }
    }
    if (v[arg] < 0.0)
        for (double& x : v) x = -x;
}

EigenSystem from_columns(std::size_t n, std::size_t d, const Eigen::VectorXd& vals,
                         const Eigen::MatrixXd& vecs) {
    EigenSystem s;
    s.n = n;
    s.d = d;
    s.lambdas.resize(d);
    s.vectors = Matrix(n, d);
    std::vector<double> column(n);
    for (std::size_t k = 0; k < d; ++k) {
        s.lambdas[k] = vals(static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < n; ++i) column[i] = vecs(static_cast<Eigen::Index>(i),
                                                            static_cast<Eigen::Index>(k));
        fix_sign(column);
        for (std::size_t i = 0; i < n; ++i) s.vectors(i, k) = column[i];
    }
    return s;
}

EigenSystem dense_top(const SparseGraph& g, std::size_t d) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(g));
    if (es.info() != Eigen::Success) throw_non_convergence("dense eigendecomposition failed");
    const std::size_t n = g.n;
    // Eigen returns ascending order; take the top d algebraically largest.
    Eigen::VectorXd vals(static_cast<Eigen::Index>(d));
    Eigen::MatrixXd vecs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) {
        const Eigen::Index src = static_cast<Eigen::Index>(n - 1 - k);
        vals(static_cast<Eigen::Index>(k)) = es.eigenvalues()(src);
        vecs.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(src);
    }
    return from_columns(n, d, vals, vecs);
}

// Lanczos-style Krylov basis with full reorthogonalization, followed by an
// explicit Rayleigh-Ritz solve on the basis. On (lucky) breakdown a fresh
// random direction restarts the recurrence, so degenerate inputs such as the
// zero matrix still yield d pairs.
EigenSystem iterative_top(const SparseGraph& g, std::size_t d, const EigenOptions& opts) {
    const std::size_t n = g.n;
    const std::size_t max_basis =
        std::min(n, opts.max_basis ? opts.max_basis : std::max<std::size_t>(8 * d + 32, 96));

    Rng rng = Rng(opts.seed).substream("lanczos-start");
    auto random_unit = [&](std::size_t len) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(len));
        for (std::size_t i = 0; i < len; ++i) v(static_cast<Eigen::Index>(i)) = rng.normal();
        v.normalize();
        return v;
    };

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(max_basis);

    auto orthogonalize = [&](Eigen::VectorXd& v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) v -= q.dot(v) * q;
        return v.norm();
    };

    auto append_fresh = [&]() {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Eigen::VectorXd v = random_unit(n);
            double nrm = orthogonalize(v);
            if (nrm > 1e-8) {
                basis.push_back(v / nrm);
                return true;
            }
        }
        return false;
    };

    std::vector<double> x(n), y(n);
    auto matvec = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd::Map(x.data(), static_cast<Eigen::Index>(n)) = v;
        g.multiply(x, y);
        return Eigen::VectorXd::Map(y.data(), static_cast<Eigen::Index>(n)).eval();
    };

    if (!append_fresh()) throw_non_convergence("could not seed Krylov basis");

    std::vector<double> residuals(d, std::numeric_limits<double>::infinity());
    std::size_t check_at = std::min(max_basis, std::max<std::size_t>(2 * d + 16, 32));

    while (true) {
        // Grow the Krylov basis up to the next checkpoint.
        while (basis.size() < check_at) {
            Eigen::VectorXd w = matvec(basis.back());
            double nrm = orthogonalize(w);
            if (nrm > 1e-10) {
                basis.push_back(w / nrm);
            } else if (!append_fresh()) {
                break;  // space exhausted
            }
        }

        const std::size_t m = basis.size();
        Eigen::MatrixXd h(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        std::vector<Eigen::VectorXd> av(m);
        for (std::size_t c = 0; c < m; ++c) av[c] = matvec(basis[c]);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = basis[r].dot(av[c]);
        h = ((h + h.transpose()) * 0.5).eval();

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        if (es.info() != Eigen::Success) throw_non_convergence("Rayleigh-Ritz solve failed");

        Eigen::VectorXd vals(static_cast<Eigen::Index>(d));
        Eigen::MatrixXd vecs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d && k < m; ++k) {
            const Eigen::Index src = static_cast<Eigen::Index>(m - 1 - k);
            Eigen::VectorXd ritz = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
            for (std::size_t c = 0; c < m; ++c)
                ritz += es.eigenvectors()(static_cast<Eigen::Index>(c), src) * basis[c];
            ritz.normalize();
            vals(static_cast<Eigen::Index>(k)) = es.eigenvalues()(src);
            vecs.col(static_cast<Eigen::Index>(k)) = ritz;
            residuals[k] = (matvec(ritz) - es.eigenvalues()(src) * ritz).norm();
        }

        bool ok = m >= d;
        for (std::size_t k = 0; ok && k < d; ++k)
            ok = residuals[k] <= opts.tol * std::max(1.0, std::abs(vals(static_cast<Eigen::Index>(k))));

        if (ok) return from_columns(n, d, vals, vecs);

        if (m >= max_basis) {
            std::ostringstream msg;
            msg << "eigensolver did not converge with basis " << m << "/" << max_basis
                << "; residuals:";
            for (std::size_t k = 0; k < d; ++k) msg << ' ' << residuals[k];
            throw_non_convergence(msg.str());
        }
        check_at = std::min(max_basis, check_at + std::max<std::size_t>(d, 16));
    }
}

}  // namespace

EigenSystem top_eigensystem(const SparseGraph& g, std::size_t d, const EigenOptions& opts) {
    if (d < 1 || d > g.n) throw_usage("rank d must satisfy 1 <= d <= n");
    if (g.n <= opts.dense_threshold || d == g.n) return dense_top(g, d);
    return iterative_top(g, d, opts);
}

std::size_t select_rank_by_energy(std::span<const double> lambdas_full, double coverage,
                                  EnergyMode mode) {
    double total = 0.0;
    for (double l : lambdas_full) total += mode == EnergyMode::Absolute ? std::abs(l) : l * l;
    return select_rank_by_energy(lambdas_full, coverage, total, mode);
}

std::size_t select_rank_by_energy(std::span<const double> lambdas_prefix, double coverage,
                                  double total_energy, EnergyMode mode) {
    if (lambdas_prefix.empty()) throw_data("empty spectrum");
    if (!(coverage > 0.0) || coverage > 1.0) throw_usage("coverage must be in (0, 1]");
    double cum = 0.0;
    for (std::size_t k = 0; k < lambdas_prefix.size(); ++k) {
        const double l = lambdas_prefix[k];
        cum += mode == EnergyMode::Absolute ? std::abs(l) : l * l;
        if (cum >= coverage * total_energy) return k + 1;
    }
    return lambdas_prefix.size();
}

std::vector<double> full_spectrum(const SparseGraph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(g), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw_non_convergence("dense eigendecomposition failed");
    std::vector<double> out(g.n);
    for (std::size_t k = 0; k < g.n; ++k)
        out[k] = es.eigenvalues()(static_cast<Eigen::Index>(g.n - 1 - k));
    return out;
}

}  // namespace topgraph
