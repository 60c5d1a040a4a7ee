// Parallel vs serial operator application on two-particle sectors of
// growing size. The serial kernel is the reference the parallel one is
// tested against; this target shows what the OpenMP row loop buys.

#include <benchmark/benchmark.h>

#include <random>

#include "kym/chain.hpp"
#include "kym/hamiltonian.hpp"
#include "kym/states.hpp"
#include "kym/theory.hpp"

namespace {

using namespace kym;

StateVector random_state(const SectorBasis& basis, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    StateVector state{&basis, Eigen::VectorXcd(basis.size())};
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
        state.amplitudes[i] = Complex{gauss(rng), gauss(rng)};
    return state;
}

template <StateVector (*Apply)(const OperatorHandle&, const StateVector&)>
void bench_apply(benchmark::State& bench) {
    const int n = static_cast<int>(bench.range(0));
    ChainGeometry geometry(n);
    const SectorBasis basis =
        enumerate_sector(geometry, pair_sector(Species::Holon, n));
    const OperatorHandle op = make_operator(geometry);
    const StateVector x = random_state(basis, 42);
    for (auto _ : bench) {
        StateVector y = Apply(op, x);
        benchmark::DoNotOptimize(y.amplitudes.data());
    }
    bench.counters["dim"] = static_cast<double>(basis.size());
}

BENCHMARK(bench_apply<apply_hamiltonian_serial>)
    ->Name("apply_serial")
    ->Arg(8)
    ->Arg(10)
    ->Arg(12)
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(bench_apply<apply_hamiltonian>)
    ->Name("apply_openmp")
    ->Arg(8)
    ->Arg(10)
    ->Arg(12)
    ->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
