#pragma once

// Closed-form single- and two-particle theory of the chain: dispersions and
// group velocities, statistically shifted momenta, pair energies, scattering
// coefficients, anyonic quantization rules, and exclusion-statistics state
// counting. Everything here is a pure function; no basis is ever built.

#include <cstdint>
#include <vector>

namespace kym {

enum class Species { Spinon, Holon };

// Orbital pair label (m, n). Valid ranges at chain size N (even), with
// M = (N-2)/2: spinon 0 <= n <= m <= M; holon 0 <= n <= m <= M+1.
struct PairLabel {
    Species species;
    int m = 0;
    int n = 0;
};

int orbital_cutoff(Species species, int n_sites);        // M or M+1
bool label_valid(const PairLabel& label, int n_sites);
std::vector<PairLabel> valid_labels(Species species, int n_sites);

// Exact rational statistical shift; the default 1/4 is the measured value.
struct Rational {
    long long num = 1;
    long long den = 4;
    double value() const { return static_cast<double>(num) / den; }
};

struct DispersionPoint {
    double momentum = 0.0;
    double energy = 0.0;
    double velocity = 0.0;
    bool in_domain = true;
};

// Spinon: energy q(pi-q)/2 + pi^2/(8N^2) on q in (0, pi), velocity pi/2 - q.
// Holon: energy p(pi+p)/2 - pi^2/(8N^2) on p in (-pi-pi/(2N), pi/(2N)),
// velocity pi/2 + p. Out-of-domain momenta evaluate but are flagged.
DispersionPoint dispersion(Species species, double momentum, int n_sites);

struct ShiftedMomenta {
    double p_m = 0.0;   // q_m for spinons
    double p_n = 0.0;   // q_n for spinons
    Rational shift;
    Species species = Species::Spinon;
};

// Spinon: q_m = pi - (2 pi/N)(m + 1/2 + s), q_n = pi - (2 pi/N)(n + 1/2 - s).
// Holon:  p_m = -pi + (2 pi/N)(m + s),      p_n = -pi + (2 pi/N)(n - s).
ShiftedMomenta single_particle_momenta(const PairLabel& label, int n_sites,
                                       Rational s = {});

// E_mn = E_0 + eps(p_m) + eps(p_n) with E_0 = -pi^2/(4N), momenta at the
// given shift (default s = 1/4).
double pair_energy(const PairLabel& label, int n_sites);
double pair_energy_at_shift(const PairLabel& label, int n_sites, double s);

double ground_energy(int n_sites);   // E_0 = -pi^2 / (4 N)

// One term of the one-directional scattering expansion
// H psi_mn = E_mn psi_mn + sum_l V_l psi_target(l).
struct ScatteringTerm {
    int l = 0;
    int target_m = 0;
    int target_n = 0;
    double coefficient = 0.0;
};

// Spinon: targets (m+l, n-l), l = 1..min(M-m, n), V_l = -(2 pi^2/N^2)(m-n+2l)
// (m-n grows at fixed m+n). Holon: targets (m-l, n+l), l = 1..floor((m-n)/2),
// V_l = +(2 pi^2/N^2)(m-n), halved when the target is the symmetric label
// m-l = n+l: the defining polynomial phi_kk carries the symmetrization factor
// 2, so the expansion over canonical labels needs half the coefficient there
// (confirmed against exact sector spectra for N = 4..10).
std::vector<ScatteringTerm> scattering_terms(const PairLabel& label, int n_sites);

// Quantization calculators for the statistical phase theta in (-pi, pi].
struct QuantizationRule {
    enum class Kind { RelativeAngularMomentum2D, MomentumSpacing1D };
    double theta = 0.0;
    Kind kind = Kind::MomentumSpacing1D;
    double length = 0.0;   // 1D only
};

// 2D: l_z / hbar = -theta/pi + 2 m, m integer.
// 1D: dp L / (2 pi hbar) = |theta|/pi + n, n = 0, 1, 2, ...
// Returns the k smallest non-negative allowed values (of l_z/hbar resp.
// dp L / (2 pi hbar)); membership is tested against the same closed forms.
std::vector<double> allowed_values(const QuantizationRule& rule, int k);
bool allows(const QuantizationRule& rule, double value, double tol = 1e-9);

// Exclusion-statistics counting: N_sp spin-1/2 bosonic spinons in M+1
// orbitals, M = (N - N_sp)/2; the total over N_sp = N mod 2 must be 2^N.
struct CountingRow {
    int n_spinons = 0;
    int orbitals = 0;                       // M + 1
    std::uint64_t states = 0;               // binom(N+1, N_sp)
};
struct CountingReport {
    std::vector<CountingRow> rows;
    std::uint64_t total = 0;
};
CountingReport hilbert_dimension(int n_sites);

} // namespace kym
