#include "kym/states.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kym {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// Phases in units of pi/N, tabulated once so equal angles give bitwise-equal
// values: operator()(t) = exp(i pi t / N) for any integer t.
struct PhaseTable {
    int n = 0;
    std::vector<Complex> half;   // exp(i pi j / N), j = 0..2N-1

    explicit PhaseTable(int n_sites) : n(n_sites) {
        half.reserve(static_cast<std::size_t>(2 * n));
        for (int j = 0; j < 2 * n; ++j)
            half.push_back(std::polar(1.0, kPi * j / n));
    }
    Complex operator()(long long t) const {
        const long long m = 2LL * n;
        return half[static_cast<std::size_t>(((t % m) + m) % m)];
    }
    Complex site(int alpha) const { return (*this)(2LL * alpha); } // eta_alpha
};

// 1-based positions of the sites holding `what`, ascending.
std::vector<int> sites_with(Configuration c, int n, Occ what) {
    std::vector<int> out;
    for (int alpha = 1; alpha <= n; ++alpha)
        if (c.occupation(alpha) == what) out.push_back(alpha);
    return out;
}

std::vector<Complex> up_coordinates(const PhaseTable& phase, Configuration c) {
    std::vector<Complex> z;
    for (int alpha = 1; alpha <= phase.n; ++alpha)
        if (c.occupation(alpha) == Occ::Up) z.push_back(phase.site(alpha));
    return z;
}

// prod_{i<j} (z_i - z_j)^2 * prod_i z_i in a fixed evaluation order.
Complex spin_polynomial(const std::vector<Complex>& z) {
    Complex amp = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        amp *= z[i];
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            const Complex d = z[i] - z[j];
            amp *= d * d;
        }
    }
    return amp;
}

void check_pair_inputs(const SectorBasis& basis, const PairLabel& label,
                       Species species) {
    require(label.species == species,
            "label species does not match the state builder");
    const int n = basis.geometry.n_sites;
    require(n % 2 == 0,
            "pair states need an even chain size, got " + std::to_string(n));
    require(basis.key == pair_sector(species, n),
            "basis sector does not match the pair sector");
}

} // namespace

SectorKey ground_sector(int n_sites) {
    require(n_sites >= 2 && n_sites % 2 == 0,
            "ground sector needs an even chain size, got " +
                std::to_string(n_sites));
    return {0, n_sites / 2};
}

SectorKey pair_sector(Species species, int n_sites) {
    require(n_sites >= 2 && n_sites % 2 == 0,
            "pair sectors need an even chain size, got " +
                std::to_string(n_sites));
    return {species == Species::Spinon ? 0 : 2, (n_sites - 2) / 2};
}

SectorKey localized_sector(Species species, int n_sites) {
    require(n_sites >= 1 && n_sites % 2 == 1,
            "localized sectors need an odd chain size, got " +
                std::to_string(n_sites));
    return {species == Species::Spinon ? 0 : 1, (n_sites - 1) / 2};
}

StateVector ground_state(const SectorBasis& basis) {
    const int n = basis.geometry.n_sites;
    require(n % 2 == 0,
            "ground state needs an even chain size, got " + std::to_string(n));
    require(basis.key == ground_sector(n),
            "basis sector does not match the ground sector");
    const PhaseTable phase(n);
    StateVector psi{&basis, Eigen::VectorXcd(basis.size())};
    const std::int64_t dim = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; ++i)
        psi.amplitudes[i] =
            spin_polynomial(up_coordinates(phase, basis.config(i)));
    return psi;
}

PairState two_spinon_state(const SectorBasis& basis, const PairLabel& label) {
    check_pair_inputs(basis, label, Species::Spinon);
    const int n = basis.geometry.n_sites;
    const int top = orbital_cutoff(Species::Spinon, n);
    PairState result;
    result.in_range = 0 <= label.n && label.n <= top &&
                      0 <= label.m && label.m <= top;
    result.state.basis = &basis;
    result.state.amplitudes.resize(basis.size());
    const PhaseTable phase(n);
    const std::int64_t dim = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        const std::vector<Complex> z = up_coordinates(phase, basis.config(i));
        Complex a_m = 0.0;
        Complex a_n = 0.0;
        for (int alpha = 1; alpha <= n; ++alpha) {
            Complex prod = 1.0;
            const Complex eta = phase.site(alpha);
            for (const Complex& zi : z) prod *= eta - zi;
            a_m += phase(-2LL * alpha * label.m) * prod;
            a_n += phase(-2LL * alpha * label.n) * prod;
        }
        result.state.amplitudes[i] = a_m * a_n * spin_polynomial(z);
    }
    return result;
}

PairState two_holon_state(const SectorBasis& basis, const PairLabel& label) {
    check_pair_inputs(basis, label, Species::Holon);
    const int n = basis.geometry.n_sites;
    const int top = orbital_cutoff(Species::Holon, n);
    PairState result;
    result.in_range = 0 <= label.n && label.n <= top &&
                      0 <= label.m && label.m <= top;
    result.state.basis = &basis;
    result.state.amplitudes.resize(basis.size());
    const PhaseTable phase(n);
    const std::int64_t dim = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        const Configuration c = basis.config(i);
        const std::vector<int> holes = sites_with(c, n, Occ::Hole);
        const int a = holes[0];
        const int b = holes[1];
        const Complex h1 = phase.site(a);
        const Complex h2 = phase.site(b);
        const std::vector<Complex> z = up_coordinates(phase, c);
        Complex prod = 1.0;
        for (const Complex& zi : z) prod *= (h1 - zi) * (h2 - zi);
        const Complex mix = phase(2LL * a * label.m + 2LL * b * label.n) +
                            phase(2LL * a * label.n + 2LL * b * label.m);
        const double sign = (b - a - 1) % 2 == 0 ? 1.0 : -1.0;
        result.state.amplitudes[i] = (h1 - h2) * mix * prod *
                                     spin_polynomial(z) *
                                     (sign * phase(a + b - 2));
    }
    return result;
}

StateVector localized_state(const SectorBasis& basis, Species species,
                            int alpha) {
    const int n = basis.geometry.n_sites;
    require(n % 2 == 1,
            "localized states need an odd chain size, got " + std::to_string(n));
    require(1 <= alpha && alpha <= n,
            "site index " + std::to_string(alpha) + " outside 1.." +
                std::to_string(n));
    require(basis.key == localized_sector(species, n),
            "basis sector does not match the localized sector");
    const PhaseTable phase(n);
    const Complex eta = phase.site(alpha);
    StateVector psi{&basis, Eigen::VectorXcd(basis.size())};
    const std::int64_t dim = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        const Configuration c = basis.config(i);
        if (species == Species::Holon && c.occupation(alpha) != Occ::Hole) {
            psi.amplitudes[i] = 0.0;
            continue;
        }
        const std::vector<Complex> z = up_coordinates(phase, c);
        Complex prod = 1.0;
        for (const Complex& zi : z) prod *= eta - zi;
        psi.amplitudes[i] = prod * spin_polynomial(z);
    }
    return psi;
}

Eigen::MatrixXcd gram_matrix(const std::vector<StateVector>& states) {
    require(!states.empty(), "gram_matrix needs at least one state");
    const SectorBasis* first = states.front().basis;
    for (const StateVector& s : states) {
        require(s.basis != nullptr, "state has no sector basis");
        require(s.basis->geometry.n_sites == first->geometry.n_sites &&
                    s.basis->key == first->key,
                "gram_matrix states live in different sectors");
        require(s.amplitudes.size() ==
                    static_cast<Eigen::Index>(first->size()),
                "state length does not match its sector size");
    }
    const Eigen::Index k = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXcd g(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i; j < k; ++j) {
            g(i, j) = states[i].amplitudes.dot(states[j].amplitudes);
            if (j != i) g(j, i) = std::conj(g(i, j));
        }
    return g;
}

double vanishing_scale_bound(const SectorBasis& basis, Species species) {
    const int n = basis.geometry.n_sites;
    require(n % 2 == 0,
            "pair states need an even chain size, got " + std::to_string(n));
    require(basis.key == pair_sector(species, n),
            "basis sector does not match the pair sector");
    const PhaseTable phase(n);
    double bound = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Configuration c = basis.config(i);
        const std::vector<Complex> z = up_coordinates(phase, c);
        const double weight = std::abs(spin_polynomial(z));
        if (species == Species::Spinon) {
            double sum = 0.0;
            for (int alpha = 1; alpha <= n; ++alpha) {
                double prod = 1.0;
                const Complex eta = phase.site(alpha);
                for (const Complex& zi : z) prod *= std::abs(eta - zi);
                sum += prod;
            }
            bound = std::max(bound, sum * sum * weight);
        } else {
            const std::vector<int> holes = sites_with(c, n, Occ::Hole);
            const Complex h1 = phase.site(holes[0]);
            const Complex h2 = phase.site(holes[1]);
            double prod = 1.0;
            for (const Complex& zi : z)
                prod *= std::abs(h1 - zi) * std::abs(h2 - zi);
            bound = std::max(bound, 2.0 * std::abs(h1 - h2) * prod * weight);
        }
    }
    return bound;
}

} // namespace kym
