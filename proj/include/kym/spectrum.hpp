#pragma once

// Exact spectra of sector Hamiltonians: dense Hermitian factorization for
// small sectors, matrix-free Lanczos with full reorthogonalization for the
// lowest eigenpairs of larger ones, and crystal momenta resolved by
// diagonalizing the translation operator inside each degenerate eigenvalue
// cluster.

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "kym/chain.hpp"
#include "kym/hamiltonian.hpp"

namespace kym {

enum class SolverMode { Dense, Iterative };

// Residual targets relative to the operator norm.
constexpr double kDenseTolerance = 1e-11;
constexpr double kIterativeTolerance = 1e-9;

struct SpectrumOptions {
    SolverMode mode = SolverMode::Dense;
    int k = 6;                     // iterative only: number of lowest pairs
    bool with_vectors = true;      // dense only: false = eigenvalues alone
                                   // (no residuals, no momenta), much faster
    bool with_momenta = true;
    std::size_t dense_limit = kDefaultDenseLimit;
    int max_iterations = 0;        // iterative; 0 = automatic
    double tolerance = 0.0;        // relative; 0 = the mode default above
    unsigned seed = 42;            // iterative start vectors
};

struct SpectrumResult {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors; // columns matching eigenvalues; 0x0 when
                                   // vectors were not requested
    Eigen::VectorXd residuals;     // ||H v - lambda v|| / ||H|| per column
    Eigen::VectorXd momenta;       // K in (-pi, pi], a multiple of 2 pi / N
                                   // within 1e-8; NaN where an iterative run
                                   // truncated a degenerate cluster
    int iterations = 0;            // iterative mode: operator applications
};

// Spectrum of the operator restricted to one sector. Dense mode throws
// CapacityError beyond options.dense_limit and meets kDenseTolerance;
// iterative mode returns the options.k lowest eigenpairs to
// kIterativeTolerance or throws ConvergenceError carrying the iteration
// count. Eigenvalues of degenerate clusters (gap below 1e-10 ||H||) get
// momentum-definite eigenvectors: the cluster is rotated into eigenvectors
// of the translation operator, whose restriction must be unitary to 1e-10.
SpectrumResult sector_spectrum(const OperatorHandle& op,
                               const SectorBasis& sector,
                               const SpectrumOptions& options = {});

// Lanczos core on a bare Hermitian action, exposed for cross-checks against
// explicit matrices. Returns the k lowest eigenpairs with true residuals
// ||A x - lambda x|| <= tolerance * norm_scale. Each restart converges the
// lowest eigenpair of the orthogonal complement of everything converged so
// far, so repeated eigenvalues are recovered to their full multiplicity.
struct LanczosResult {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
    int iterations = 0;            // operator applications used
};

LanczosResult lanczos_lowest(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
    Eigen::Index dim, int k, double norm_scale,
    double tolerance = kIterativeTolerance, int max_iterations = 0,
    unsigned seed = 42);

} // namespace kym
