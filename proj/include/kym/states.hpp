#pragma once

// Explicit wave functions of the chain, evaluated configuration by
// configuration from their defining polynomials: the spin ground state, the
// two-spinon and two-holon pair bases, and localized one-particle states.
//
// All states are returned unnormalized — the polynomial coefficients are the
// objects of interest, and normalizing early would obscure the "identically
// zero" checks. Verification therefore works with relative residuals, and
// zero detection compares the norm against a scale-aware magnitude bound
// (vanishing_scale_bound below).
//
// Builders take the sector basis rather than the bare geometry so the caller
// controls basis lifetime and can share one enumeration across the many
// states that live in the same sector.

#include <vector>

#include <Eigen/Dense>

#include "kym/chain.hpp"
#include "kym/theory.hpp"

namespace kym {

// Sectors the explicit states live in. `n_sites` must be even for the
// ground/pair sectors and odd for the localized ones.
SectorKey ground_sector(int n_sites);                        // Q=0, M_up=N/2
SectorKey pair_sector(Species species, int n_sites);         // Q=0|2, (N-2)/2
SectorKey localized_sector(Species species, int n_sites);    // Q=0|1, (N-1)/2

// Psi_0: the configuration with up spins at {z_i} carries amplitude
// prod_{i<j} (z_i - z_j)^2 * prod_i z_i. Basis sector must be
// ground_sector(N), N even; otherwise std::invalid_argument.
StateVector ground_state(const SectorBasis& basis);

// A pair state plus a flag recording whether both orbital labels lie in the
// canonical window ([0, M] for spinons, [0, M+1] for holons, M = (N-2)/2).
// Outside the window the defining polynomial is still evaluated honestly —
// the claimed identical vanishing is observed, never assumed.
struct PairState {
    StateVector state;
    bool in_range = true;
};

// Two-spinon state with orbital labels (m, n): amplitude for up spins {z_i}
//
//   sum_{alpha,beta} etabar_alpha^m etabar_beta^n
//                    prod_i (eta_alpha - z_i)(eta_beta - z_i) * Psi_0[z],
//
// evaluated in the factorized form A_m(z) A_n(z) Psi_0(z) with
// A_k(z) = sum_alpha etabar_alpha^k prod_i (eta_alpha - z_i). The double sum
// is symmetric, so amplitudes for (m, n) and (n, m) agree exactly. Basis
// sector must be pair_sector(Spinon, N) and label.species Spinon.
PairState two_spinon_state(const SectorBasis& basis, const PairLabel& label);

// Two-holon state with orbital labels (m, n): for holes at sites a < b
// (ordered representative, h1 = eta_a, h2 = eta_b) and up spins {z_i},
//
//   phi_mn(h1, h2) * prod_i (h1 - z_i)(h2 - z_i) * Psi_0[z]
//     * (-1)^(b-a-1) * exp(i pi (a+b-2)/N),
//   phi_mn(h1, h2) = (h1 - h2)(h1^m h2^n + h1^n h2^m).
//
// The trailing unimodular gauge factor matches the crossing-sign convention
// of the operator (hole motion carries half-chord phases; see
// hamiltonian.hpp); it leaves norms and Gram matrices untouched but is what
// makes these states diagonalize the interaction. Basis sector must be
// pair_sector(Holon, N) and label.species Holon.
PairState two_holon_state(const SectorBasis& basis, const PairLabel& label);

// Localized one-particle states on odd chains. Spinon at site alpha
// (Q=0, M_up=(N-1)/2): amplitude prod_i (eta_alpha - z_i) * Psi~_0[z] with
// Psi~_0 the same polynomial at (N-1)/2 arguments. Holon at site alpha
// (Q=1, M_up=(N-1)/2): zero unless the hole sits at alpha, then the same
// amplitude on the remaining spin configuration.
StateVector localized_state(const SectorBasis& basis, Species species, int alpha);

// G[i][j] = <state_i | state_j>, exactly Hermitian by construction (upper
// triangle computed, mirror conjugated). All states must share one sector;
// mismatch throws std::invalid_argument.
Eigen::MatrixXcd gram_matrix(const std::vector<StateVector>& states);

// Largest single-configuration magnitude the pair-state polynomial could
// reach in this sector (triangle inequality, independent of m and n since
// the orbital factors are unimodular). "Vanishes identically" means
// norm(state) <= kVanishingRelativeTolerance * vanishing_scale_bound(...).
double vanishing_scale_bound(const SectorBasis& basis, Species species);

constexpr double kVanishingRelativeTolerance = 1e-10;

} // namespace kym
