#include "kym/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kym/chain.hpp"

namespace kym {

namespace {
constexpr double kPi = std::numbers::pi;

void check_even(int n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0)
        throw std::invalid_argument("pair labels need an even chain size, got " +
                                    std::to_string(n_sites));
}

void check_label(const PairLabel& label, int n_sites) {
    if (!label_valid(label, n_sites))
        throw std::invalid_argument(
            "invalid label (m=" + std::to_string(label.m) +
            ", n=" + std::to_string(label.n) + ") for N=" +
            std::to_string(n_sites));
}
} // namespace

int orbital_cutoff(Species species, int n_sites) {
    check_even(n_sites);
    const int m = (n_sites - 2) / 2;
    return species == Species::Spinon ? m : m + 1;
}

bool label_valid(const PairLabel& label, int n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0) return false;
    return 0 <= label.n && label.n <= label.m &&
           label.m <= orbital_cutoff(label.species, n_sites);
}

std::vector<PairLabel> valid_labels(Species species, int n_sites) {
    const int top = orbital_cutoff(species, n_sites);
    std::vector<PairLabel> labels;
    labels.reserve(static_cast<std::size_t>((top + 1) * (top + 2) / 2));
    for (int m = 0; m <= top; ++m)
        for (int n = 0; n <= m; ++n) labels.push_back({species, m, n});
    return labels;
}

DispersionPoint dispersion(Species species, double momentum, int n_sites) {
    if (n_sites < 1) throw std::invalid_argument("chain size must be positive");
    const double n2 = static_cast<double>(n_sites) * n_sites;
    DispersionPoint point;
    point.momentum = momentum;
    if (species == Species::Spinon) {
        point.energy = 0.5 * momentum * (kPi - momentum) + kPi * kPi / (8 * n2);
        point.velocity = kPi / 2 - momentum;
        point.in_domain = momentum > 0.0 && momentum < kPi;
    } else {
        point.energy = 0.5 * momentum * (kPi + momentum) - kPi * kPi / (8 * n2);
        point.velocity = kPi / 2 + momentum;
        point.in_domain = momentum > -kPi - kPi / (2 * n_sites) &&
                          momentum < kPi / (2 * n_sites);
    }
    return point;
}

ShiftedMomenta single_particle_momenta(const PairLabel& label, int n_sites,
                                       Rational s) {
    check_label(label, n_sites);
    const double step = 2 * kPi / n_sites;
    const double sv = s.value();
    ShiftedMomenta momenta;
    momenta.shift = s;
    momenta.species = label.species;
    if (label.species == Species::Spinon) {
        momenta.p_m = kPi - step * (label.m + 0.5 + sv);
        momenta.p_n = kPi - step * (label.n + 0.5 - sv);
    } else {
        momenta.p_m = -kPi + step * (label.m + sv);
        momenta.p_n = -kPi + step * (label.n - sv);
    }
    return momenta;
}

double ground_energy(int n_sites) { return -kPi * kPi / (4 * n_sites); }

double pair_energy_at_shift(const PairLabel& label, int n_sites, double s) {
    check_label(label, n_sites);
    const double step = 2 * kPi / n_sites;
    double pm, pn;
    if (label.species == Species::Spinon) {
        pm = kPi - step * (label.m + 0.5 + s);
        pn = kPi - step * (label.n + 0.5 - s);
    } else {
        pm = -kPi + step * (label.m + s);
        pn = -kPi + step * (label.n - s);
    }
    return ground_energy(n_sites) +
           dispersion(label.species, pm, n_sites).energy +
           dispersion(label.species, pn, n_sites).energy;
}

double pair_energy(const PairLabel& label, int n_sites) {
    return pair_energy_at_shift(label, n_sites, 0.25);
}

std::vector<ScatteringTerm> scattering_terms(const PairLabel& label,
                                             int n_sites) {
    check_label(label, n_sites);
    const double unit = 2 * kPi * kPi / (static_cast<double>(n_sites) * n_sites);
    std::vector<ScatteringTerm> terms;
    if (label.species == Species::Spinon) {
        const int m_top = orbital_cutoff(Species::Spinon, n_sites);
        const int l_max = std::min(m_top - label.m, label.n);
        for (int l = 1; l <= l_max; ++l)
            terms.push_back({l, label.m + l, label.n - l,
                             -unit * (label.m - label.n + 2 * l)});
    } else {
        const int l_max = (label.m - label.n) / 2;
        for (int l = 1; l <= l_max; ++l) {
            double v = unit * (label.m - label.n);
            if (label.m - l == label.n + l) v *= 0.5;
            terms.push_back({l, label.m - l, label.n + l, v});
        }
    }
    return terms;
}

std::vector<double> allowed_values(const QuantizationRule& rule, int k) {
    if (rule.theta <= -kPi || rule.theta > kPi)
        throw std::invalid_argument("theta must lie in (-pi, pi]");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (rule.kind == QuantizationRule::Kind::MomentumSpacing1D &&
        rule.length <= 0.0)
        throw std::invalid_argument("1D rule needs a positive length");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(k));
    if (rule.kind == QuantizationRule::Kind::MomentumSpacing1D) {
        const double base = std::abs(rule.theta) / kPi;
        for (int n = 0; n < k; ++n) values.push_back(base + n);
    } else {
        // Smallest m with -theta/pi + 2m >= 0, then every integer m above.
        const double base = -rule.theta / kPi;
        int m = static_cast<int>(std::ceil(-base / 2 - 1e-12));
        for (int i = 0; i < k; ++i, ++m) values.push_back(base + 2.0 * m);
    }
    return values;
}

bool allows(const QuantizationRule& rule, double value, double tol) {
    if (rule.theta <= -kPi || rule.theta > kPi)
        throw std::invalid_argument("theta must lie in (-pi, pi]");
    if (rule.kind == QuantizationRule::Kind::MomentumSpacing1D) {
        const double base = std::abs(rule.theta) / kPi;
        const double n = std::round(value - base);
        return n >= -0.5 && std::abs(value - base - n) <= tol;
    }
    const double base = -rule.theta / kPi;
    const double two_m = value - base;
    return std::abs(two_m / 2 - std::round(two_m / 2)) <= tol / 2;
}

CountingReport hilbert_dimension(int n_sites) {
    if (n_sites < 1) throw std::invalid_argument("chain size must be positive");
    CountingReport report;
    for (int n_sp = n_sites % 2; n_sp <= n_sites; n_sp += 2) {
        const int m = (n_sites - n_sp) / 2;
        // Multisets of n_sp spin-1/2 bosons over m+1 orbitals, i.e. over
        // 2(m+1) single-particle states: binom(2(m+1) + n_sp - 1, n_sp),
        // which collapses to binom(N+1, n_sp).
        report.rows.push_back(
            {n_sp, m + 1, binomial(2 * (m + 1) + n_sp - 1, n_sp)});
        report.total += report.rows.back().states;
    }
    return report;
}

} // namespace kym
