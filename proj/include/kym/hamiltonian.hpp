#pragma once

// Matrix-free application of the 1/r^2 supersymmetric exchange Hamiltonian
//
//   H = -(2 pi^2 / N^2) sum_{pairs a<b} P~_ab / |eta_a - eta_b|^2
//
// on sector state vectors, plus a dense build and operator self-checks.
//
// Matrix-element rules for one unordered pair {a, b}, weight w = 1/|eta_a -
// eta_b|^2 and prefactor g0 = -2 pi^2 / N^2, acting on a configuration c:
//
//   * both sites carry spins of the same kind: diagonal, amplitude -g0 w;
//   * opposite spins: off-diagonal to the swapped configuration, -g0 w;
//   * both sites holes: diagonal, +g0 w;
//   * hole + spin: off-diagonal to the hopped configuration with amplitude
//     g0 w (-1)^f ph, where f counts occupied sites strictly between a and b
//     (in linear site order) and, in sectors with an even number of occupied
//     sites, ph = exp(+i pi (b-a)/N) when the spin hops b -> a and its
//     conjugate when it hops a -> b (ph = 1 for odd occupation counts).
//
// The fermionic crossing sign (-1)^f and the half-chord hop phase are what
// make the hole hop consistent with periodicity: with them the operator is
// Hermitian, commutes with the pure one-site translation in every sector,
// and reproduces the closed-form two-holon spectra; the naive rule
// (amplitude +g0 w for every hole hop) fails all three beyond one hole.
// Hole-free sectors never hop, so none of this touches the pure spin model.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kym/chain.hpp"
#include "kym/report.hpp"

namespace kym {

inline constexpr std::size_t kDefaultDenseLimit = 6000;

// w(delta) = 1 / (4 sin^2(pi delta / N)) for separation delta = 1..N-1;
// w(delta) = w(N-delta) > 0.
struct CouplingTable {
    std::vector<double> w;   // index = separation; w[0] unused
};

// Immutable, sector-independent description of H for one geometry: coupling
// table, prefactor, and the half-chord hop phases. Shareable across threads.
struct OperatorHandle {
    ChainGeometry geometry;
    CouplingTable coupling;
    double prefactor;                    // g0 = -2 pi^2 / N^2
    std::vector<Complex> hop_phase;      // exp(i pi delta / N), delta = 0..N-1
};

OperatorHandle make_operator(const ChainGeometry& geometry);

// y = H x. Parallelizes over output configurations; the summation order
// within one output amplitude is fixed, so results are bitwise reproducible
// for any thread count. Throws std::invalid_argument on geometry mismatch.
StateVector apply_hamiltonian(const OperatorHandle& op, const StateVector& state);

// Single-threaded reference kernel; bitwise identical to apply_hamiltonian.
StateVector apply_hamiltonian_serial(const OperatorHandle& op,
                                     const StateVector& state);

// Dense sector matrix, exactly Hermitian by construction and agreeing with
// apply_hamiltonian column by column. Hole-free sectors come out real;
// two-hole sectors with an even occupation count are genuinely complex.
// Throws CapacityError naming the limit when the sector exceeds it.
Eigen::MatrixXcd build_dense(const OperatorHandle& op, const SectorBasis& sector,
                             std::size_t dense_limit = kDefaultDenseLimit);

// Exact maximum absolute row sum: every pair contributes |g0| w to every
// row, so the bound is |g0| sum_{a<b} w(b-a), attained by the polarized state.
double operator_norm_bound(const OperatorHandle& op);

// H on the full 3^N configuration space (`full` from enumerate_full_space).
// Block-diagonal over sectors by construction; used to measure leakage.
Eigen::VectorXcd apply_full_space(const OperatorHandle& op,
                                  const std::vector<std::uint64_t>& full,
                                  const Eigen::VectorXcd& x);

// Several full-space vectors (columns of x) in one pass; the per-row term
// enumeration is shared across columns, which is what makes many-vector
// leakage checks affordable.
Eigen::MatrixXcd apply_full_space(const OperatorHandle& op,
                                  const std::vector<std::uint64_t>& full,
                                  const Eigen::MatrixXcd& x);

// Randomized symmetry checks on one sector: Hermiticity defect, translation
// commutator |(HT - TH)v| / (|H| |v|), and sector leakage under the
// full-space apply, maximized over `trials` seeded Gaussian vectors. All
// three must be <= 1e-12.
VerificationReport operator_self_checks(const OperatorHandle& op,
                                        const SectorBasis& sector, int trials,
                                        std::uint64_t seed = 42);

} // namespace kym
