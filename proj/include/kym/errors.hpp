#pragma once

#include <stdexcept>
#include <string>

namespace kym {

// A request exceeded a configured resource limit (e.g. dense matrix build on
// a sector larger than the dense limit). The message names the limit.
class CapacityError : public std::runtime_error {
public:
    CapacityError(std::size_t requested, std::size_t limit)
        : std::runtime_error("capacity exceeded: requested size " +
                             std::to_string(requested) + " > limit " +
                             std::to_string(limit)),
          requested(requested), limit(limit) {}
    std::size_t requested;
    std::size_t limit;
};

// An iterative solver failed to reach its tolerance within the configured
// iteration budget. The message carries the iteration count.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(int iterations, double residual)
        : std::runtime_error("no convergence after " +
                             std::to_string(iterations) +
                             " iterations (residual " +
                             std::to_string(residual) + ")"),
          iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

} // namespace kym
