#include "kym/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "kym/errors.hpp"

namespace kym {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd random_unit(std::mt19937_64& rng, Eigen::Index dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[i] = Complex(re, im);
    }
    v.normalize();
    return v;
}

// Two classical Gram-Schmidt passes against the converged block x and the
// first v_cols columns of the Krylov block v.
void orthogonalize(Eigen::VectorXcd& w, const Eigen::MatrixXcd& x,
                   const Eigen::MatrixXcd& v, Eigen::Index v_cols) {
    for (int pass = 0; pass < 2; ++pass) {
        if (x.cols() > 0) w -= x * (x.adjoint() * w);
        if (v_cols > 0)
            w -= v.leftCols(v_cols) * (v.leftCols(v_cols).adjoint() * w);
    }
}

// K = -arg(t), snapped to the nearest multiple of 2 pi / N and mapped to the
// principal window (-pi, pi]. *ok reports whether the snap stayed within 1e-8.
double principal_momentum(Complex t, int n_sites, bool* ok) {
    const double k_raw = -std::arg(t);
    long long r = std::llround(k_raw * n_sites / (2 * kPi));
    *ok = std::abs(k_raw - 2 * kPi * r / n_sites) <= 1e-8;
    r = ((r % n_sites) + n_sites) % n_sites;
    if (2 * r > n_sites) r -= n_sites;
    return 2 * kPi * static_cast<double>(r) / n_sites;
}

// Group degenerate eigenvalues (gap <= 1e-10 ||H||), diagonalize T inside
// each cluster, rotate the cluster columns into momentum eigenvectors, and
// record K per column. In strict mode (full spectra) a cluster on which T
// fails to restrict unitarily is an internal error; otherwise (truncated
// iterative spectra) its momenta stay NaN.
void resolve_momenta(const SectorBasis& sector, double norm_scale, bool strict,
                     SpectrumResult* result) {
    const Eigen::Index total = result->eigenvalues.size();
    result->momenta = Eigen::VectorXd::Constant(
        total, std::numeric_limits<double>::quiet_NaN());
    if (result->eigenvectors.cols() != total) return;
    const double gap = 1e-10 * norm_scale;
    const int n = sector.geometry.n_sites;
    Eigen::Index lo = 0;
    while (lo < total) {
        Eigen::Index hi = lo + 1;
        while (hi < total &&
               result->eigenvalues[hi] - result->eigenvalues[hi - 1] <= gap)
            ++hi;
        const Eigen::Index c = hi - lo;

        Eigen::MatrixXcd tv(result->eigenvectors.rows(), c);
        for (Eigen::Index i = 0; i < c; ++i) {
            StateVector column{&sector, result->eigenvectors.col(lo + i)};
            tv.col(i) = apply_translation(column).amplitudes;
        }
        const Eigen::MatrixXcd s_mat =
            result->eigenvectors.middleCols(lo, c).adjoint() * tv;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(s_mat);

        bool ok = ces.info() == Eigen::Success;
        std::vector<std::pair<double, Eigen::Index>> cluster_k(
            static_cast<std::size_t>(c));
        for (Eigen::Index j = 0; ok && j < c; ++j) {
            if (std::abs(std::abs(ces.eigenvalues()[j]) - 1.0) > 1e-10)
                ok = false;
            bool snapped = false;
            cluster_k[static_cast<std::size_t>(j)] = {
                principal_momentum(ces.eigenvalues()[j], n, &snapped), j};
            ok = ok && snapped;
        }
        if (!ok) {
            if (strict)
                throw std::runtime_error(
                    "translation does not restrict unitarily to a degenerate "
                    "cluster; momenta cannot be resolved");
            lo = hi;
            continue;
        }

        std::sort(cluster_k.begin(), cluster_k.end());
        Eigen::MatrixXcd rotated(result->eigenvectors.rows(), c);
        for (Eigen::Index j = 0; j < c; ++j) {
            const auto& [momentum, source] =
                cluster_k[static_cast<std::size_t>(j)];
            rotated.col(j) = result->eigenvectors.middleCols(lo, c) *
                             ces.eigenvectors().col(source);
            rotated.col(j).normalize();
            result->momenta[lo + j] = momentum;
        }
        result->eigenvectors.middleCols(lo, c) = rotated;
        lo = hi;
    }
}

SpectrumResult dense_spectrum(const OperatorHandle& op,
                              const SectorBasis& sector,
                              const SpectrumOptions& options) {
    const Eigen::MatrixXcd h = build_dense(op, sector, options.dense_limit);
    const double scale = operator_norm_bound(op);
    const double tol = options.tolerance > 0.0 ? options.tolerance
                                               : kDenseTolerance;
    SpectrumResult result;
    if (!options.with_vectors) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            h, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("dense eigenvalue factorization failed");
        result.eigenvalues = es.eigenvalues();
        return result;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense eigenvalue factorization failed");
    result.eigenvalues = es.eigenvalues();
    result.eigenvectors = es.eigenvectors();
    if (options.with_momenta)
        resolve_momenta(sector, scale, /*strict=*/true, &result);

    const Eigen::Index total = result.eigenvalues.size();
    const Eigen::MatrixXcd hv = h * result.eigenvectors;
    result.residuals.resize(total);
    for (Eigen::Index i = 0; i < total; ++i) {
        result.residuals[i] = (hv.col(i) - result.eigenvalues[i] *
                                               result.eigenvectors.col(i))
                                  .norm() /
                              scale;
        if (result.residuals[i] > tol)
            throw std::runtime_error(
                "dense eigenpair residual exceeds the declared tolerance");
    }
    return result;
}

} // namespace

LanczosResult lanczos_lowest(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
    Eigen::Index dim, int k, double norm_scale, double tolerance,
    int max_iterations, unsigned seed) {
    if (dim < 2 || k < 1 || k >= dim)
        throw std::invalid_argument(
            "iterative solver needs 1 <= k < dimension");
    if (!(norm_scale > 0.0))
        throw std::invalid_argument("norm_scale must be positive");
    if (tolerance <= 0.0) tolerance = kIterativeTolerance;
    if (max_iterations <= 0) max_iterations = 100 * k + 500;
    const double abs_tol = tolerance * norm_scale;
    const double breakdown = 1e-13 * norm_scale;

    std::mt19937_64 rng(seed);
    Eigen::MatrixXcd x(dim, 0);     // converged vectors, orthonormal
    std::vector<double> lambda;     // converged eigenvalues
    int applications = 0;
    double best_estimate = std::numeric_limits<double>::infinity();

    while (static_cast<int>(lambda.size()) < k) {
        const Eigen::Index complement = dim - x.cols();
        if (complement <= 0)
            throw ConvergenceError(applications, best_estimate / norm_scale);
        const Eigen::Index inner_cap = std::min<Eigen::Index>(complement, 300);
        Eigen::MatrixXcd v(dim, inner_cap);
        std::vector<double> alpha;
        std::vector<double> beta;   // beta[j] couples v_j and v_{j+1}

        Eigen::VectorXcd vj = random_unit(rng, dim);
        orthogonalize(vj, x, v, 0);
        vj.normalize();

        bool appended = false;
        for (Eigen::Index j = 0; j < inner_cap && !appended; ++j) {
            if (applications >= max_iterations)
                throw ConvergenceError(applications,
                                       best_estimate / norm_scale);
            v.col(j) = vj;
            Eigen::VectorXcd w = apply(vj);
            ++applications;
            alpha.push_back(vj.dot(w).real());
            w -= alpha.back() * vj;
            if (j > 0) w -= beta[j - 1] * v.col(j - 1);
            orthogonalize(w, x, v, j + 1);
            const double b = w.norm();
            beta.push_back(b);   // couples v_j to the upcoming v_{j+1}

            const Eigen::Index m = j + 1;
            const bool exhausted = b <= breakdown || j == inner_cap - 1;
            const bool check = exhausted || m <= 20 || j % 5 == 4;
            if (check) {
                Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
                for (Eigen::Index i = 0; i < m; ++i) {
                    tri(i, i) = alpha[static_cast<std::size_t>(i)];
                    if (i + 1 < m)
                        tri(i, i + 1) = tri(i + 1, i) =
                            beta[static_cast<std::size_t>(i)];
                }
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
                // Accept only the lowest pair of this run: a single Krylov
                // run sees one copy of a degenerate eigenvalue, so taking
                // more would silently drop the remaining copies. One pair
                // per restart makes the k lowest exact counting multiplicity.
                const int need = 1;

                Eigen::Index good = 0;
                while (good < m) {
                    const double estimate =
                        b * std::abs(es.eigenvectors()(m - 1, good));
                    if (good == 0)
                        best_estimate = std::min(best_estimate, estimate);
                    if (estimate > 0.5 * abs_tol && b > breakdown) break;
                    ++good;
                }
                if (good > static_cast<Eigen::Index>(need)) good = need;

                if (good == need || (exhausted && good > 0)) {
                    Eigen::MatrixXcd ritz =
                        v.leftCols(m) * es.eigenvectors().leftCols(good);
                    for (Eigen::Index i = 0; i < good; ++i) {
                        Eigen::VectorXcd y = ritz.col(i);
                        orthogonalize(y, x, v, 0);  // guard against drift
                        y.normalize();
                        x.conservativeResize(Eigen::NoChange, x.cols() + 1);
                        x.col(x.cols() - 1) = y;
                        lambda.push_back(es.eigenvalues()[i]);
                    }
                    appended = true;
                } else if (exhausted) {
                    throw ConvergenceError(applications,
                                           best_estimate / norm_scale);
                }
            }
            if (!appended) vj = w / b;
        }
        if (!appended)
            throw ConvergenceError(applications, best_estimate / norm_scale);
    }

    // Sort ascending and verify true residuals.
    std::vector<Eigen::Index> order(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i)
        order[i] = static_cast<Eigen::Index>(i);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return lambda[static_cast<std::size_t>(a)] <
               lambda[static_cast<std::size_t>(b)];
    });

    LanczosResult result;
    result.eigenvalues.resize(k);
    result.eigenvectors.resize(dim, k);
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        result.eigenvalues[i] = lambda[static_cast<std::size_t>(src)];
        result.eigenvectors.col(i) = x.col(src);
        const Eigen::VectorXcd r = apply(x.col(src)) -
                                   result.eigenvalues[i] * x.col(src);
        ++applications;
        worst = std::max(worst, r.norm());
    }
    result.iterations = applications;
    if (worst > abs_tol)
        throw ConvergenceError(applications, worst / norm_scale);
    return result;
}

SpectrumResult sector_spectrum(const OperatorHandle& op,
                               const SectorBasis& sector,
                               const SpectrumOptions& options) {
    if (op.geometry.n_sites != sector.geometry.n_sites)
        throw std::invalid_argument(
            "operator and sector use different chain sizes");
    if (options.mode == SolverMode::Dense)
        return dense_spectrum(op, sector, options);

    const double scale = operator_norm_bound(op);
    const double tol = options.tolerance > 0.0 ? options.tolerance
                                               : kIterativeTolerance;
    const auto apply = [&](const Eigen::VectorXcd& amplitudes) {
        StateVector state{&sector, amplitudes};
        return apply_hamiltonian(op, state).amplitudes;
    };
    LanczosResult lr = lanczos_lowest(apply,
                                      static_cast<Eigen::Index>(sector.size()),
                                      options.k, scale, tol,
                                      options.max_iterations, options.seed);
    SpectrumResult result;
    result.eigenvalues = lr.eigenvalues;
    result.eigenvectors = lr.eigenvectors;
    result.iterations = lr.iterations;
    if (options.with_momenta)
        resolve_momenta(sector, scale, /*strict=*/false, &result);

    result.residuals.resize(result.eigenvalues.size());
    for (Eigen::Index i = 0; i < result.eigenvalues.size(); ++i) {
        const Eigen::VectorXcd r =
            apply(result.eigenvectors.col(i)) -
            result.eigenvalues[i] * result.eigenvectors.col(i);
        result.residuals[i] = r.norm() / scale;
        if (result.residuals[i] > tol)
            throw ConvergenceError(result.iterations, result.residuals[i]);
    }
    return result;
}

} // namespace kym
