#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kym/errors.hpp"
#include "kym/hamiltonian.hpp"

using namespace kym;

namespace {
constexpr double kPi = std::numbers::pi;

StateVector random_state(const SectorBasis& basis, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    StateVector v{&basis, Eigen::VectorXcd(basis.size())};
    for (Eigen::Index k = 0; k < v.amplitudes.size(); ++k)
        v.amplitudes[k] = Complex{gauss(rng), gauss(rng)};
    return v;
}
} // namespace

TEST_CASE("two-site Sz=0 block is [[0, pi^2/8], [pi^2/8, 0]]") {
    ChainGeometry geom(2);
    OperatorHandle op = make_operator(geom);
    SectorBasis sector = enumerate_sector(geom, {0, 1});
    Eigen::MatrixXcd h = build_dense(op, sector);
    REQUIRE(h.rows() == 2);
    CHECK(std::abs(h(0, 0)) < 1e-15);
    CHECK(std::abs(h(1, 1)) < 1e-15);
    CHECK(h(0, 1).real() == doctest::Approx(kPi * kPi / 8).epsilon(1e-15));
    CHECK(h(1, 0).real() == doctest::Approx(kPi * kPi / 8).epsilon(1e-15));
    CHECK(std::abs(h(0, 1).imag()) < 1e-16);
}

TEST_CASE("fully polarized state is an eigenstate at pi^2 (N^2-1) / (12 N)") {
    const double expected5 = 3.947841760435743;   // N=5
    const double expected8 = 6.476927888214892;   // N=8
    for (auto [n, expected] : {std::pair{5, expected5}, std::pair{8, expected8}}) {
        ChainGeometry geom(n);
        OperatorHandle op = make_operator(geom);
        SectorBasis sector = enumerate_sector(geom, {0, n});
        REQUIRE(sector.size() == 1);
        Eigen::MatrixXcd h = build_dense(op, sector);
        CHECK(h(0, 0).real() == doctest::Approx(expected).epsilon(1e-14));
        CHECK(std::abs(h(0, 0).imag()) < 1e-16);
        // The norm bound is the max row sum and is attained exactly here.
        CHECK(operator_norm_bound(op) ==
              doctest::Approx(expected).epsilon(1e-14));
    }
    // N=6 norm bound pinned: 35 pi^2 / 72.
    CHECK(operator_norm_bound(make_operator(ChainGeometry(6))) ==
          doctest::Approx(4.79772436164066).epsilon(1e-14));
}

TEST_CASE("dense build matches the matrix-free apply column by column") {
    std::mt19937_64 rng(3);
    for (SectorKey key : {SectorKey{0, 3}, SectorKey{1, 2}, SectorKey{2, 2},
                          SectorKey{3, 1}}) {
        ChainGeometry geom(6);
        OperatorHandle op = make_operator(geom);
        SectorBasis sector = enumerate_sector(geom, key);
        Eigen::MatrixXcd h = build_dense(op, sector);
        CHECK((h - h.adjoint()).norm() == 0.0);   // Hermitian to the last bit
        for (int rep = 0; rep < 5; ++rep) {
            StateVector x = random_state(sector, rng);
            StateVector y = apply_hamiltonian(op, x);
            CHECK((h * x.amplitudes - y.amplitudes).norm() <=
                  1e-14 * operator_norm_bound(op) * x.norm());
        }
        // Basis-vector columns agree as well.
        for (std::size_t j = 0; j < std::min<std::size_t>(sector.size(), 4); ++j) {
            StateVector e{&sector, Eigen::VectorXcd::Zero(sector.size())};
            e.amplitudes[static_cast<Eigen::Index>(j)] = 1.0;
            StateVector he = apply_hamiltonian(op, e);
            CHECK((h.col(static_cast<Eigen::Index>(j)) - he.amplitudes).norm() <
                  1e-14);
        }
    }
}

TEST_CASE("hole-free and odd-occupation sectors are real; two-hole even ones are not") {
    ChainGeometry g6(6);
    OperatorHandle op = make_operator(g6);
    CHECK(build_dense(op, enumerate_sector(g6, {0, 3})).imag().norm() == 0.0);
    CHECK(build_dense(op, enumerate_sector(g6, {1, 3})).imag().norm() == 0.0);
    CHECK(build_dense(op, enumerate_sector(g6, {2, 2})).imag().norm() > 0.1);
}

TEST_CASE("Hermiticity on 100 random pairs, N=8, Q in {0,2}") {
    ChainGeometry geom(8);
    OperatorHandle op = make_operator(geom);
    const double hnorm = operator_norm_bound(op);
    std::mt19937_64 rng(42);
    for (int q : {0, 2}) {
        SectorBasis sector = enumerate_sector(geom, {q, (8 - q) / 2});
        for (int t = 0; t < 50; ++t) {
            StateVector u = random_state(sector, rng);
            StateVector v = random_state(sector, rng);
            Complex uhv = u.amplitudes.dot(apply_hamiltonian(op, v).amplitudes);
            Complex huv = apply_hamiltonian(op, u).amplitudes.dot(v.amplitudes);
            CHECK(std::abs(uhv - huv) <= 1e-12 * hnorm * u.norm() * v.norm());
        }
    }
}

TEST_CASE("self-checks: Hermiticity, [H,T]=0, sector conservation") {
    for (auto [n, q, mup] : {std::tuple{8, 0, 4}, std::tuple{6, 2, 2},
                             std::tuple{6, 3, 2}, std::tuple{5, 1, 2},
                             std::tuple{7, 2, 3}}) {
        ChainGeometry geom(n);
        OperatorHandle op = make_operator(geom);
        SectorBasis sector = enumerate_sector(geom, {q, mup});
        VerificationReport report = operator_self_checks(op, sector, 50);
        INFO("sector N=", n, " Q=", q, " M_up=", mup);
        CHECK(report.pass);
        for (const auto& c : report.checks) CHECK(c.value <= 1e-12);
    }
    // Two sites: T swaps the two Sz=0 configurations and H is symmetric
    // under it, so the commutator vanishes identically.
    ChainGeometry g2(2);
    VerificationReport r2 = operator_self_checks(
        make_operator(g2), enumerate_sector(g2, {0, 1}), 10);
    CHECK(r2.pass);
    CHECK(r2.worst_value("translation_commutator") <= 1e-15);
}

TEST_CASE("parallel and serial kernels agree bitwise at any thread count") {
    ChainGeometry geom(8);
    OperatorHandle op = make_operator(geom);
    SectorBasis sector = enumerate_sector(geom, {2, 3});
    std::mt19937_64 rng(9);
    StateVector x = random_state(sector, rng);
    StateVector serial = apply_hamiltonian_serial(op, x);
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        StateVector parallel = apply_hamiltonian(op, x);
        REQUIRE(parallel.amplitudes.size() == serial.amplitudes.size());
        for (Eigen::Index i = 0; i < serial.amplitudes.size(); ++i) {
            CHECK(parallel.amplitudes[i].real() == serial.amplitudes[i].real());
            CHECK(parallel.amplitudes[i].imag() == serial.amplitudes[i].imag());
        }
    }
    omp_set_num_threads(saved);
#else
    StateVector parallel = apply_hamiltonian(op, x);
    CHECK((parallel.amplitudes - serial.amplitudes).norm() == 0.0);
#endif
}

TEST_CASE("capacity and argument errors") {
    ChainGeometry geom(8);
    OperatorHandle op = make_operator(geom);
    SectorBasis big = enumerate_sector(geom, {0, 4});   // size 70
    CHECK_THROWS_AS(build_dense(op, big, 10), CapacityError);
    try {
        build_dense(op, big, 10);
    } catch (const CapacityError& e) {
        CHECK(e.limit == 10);
        CHECK(e.requested == 70);
        CHECK(std::string(e.what()).find("10") != std::string::npos);
    }
    // Geometry mismatch is rejected.
    ChainGeometry g6(6);
    SectorBasis other = enumerate_sector(g6, {0, 3});
    std::mt19937_64 rng(1);
    StateVector x = random_state(other, rng);
    CHECK_THROWS_AS(apply_hamiltonian(op, x), std::invalid_argument);
}

TEST_CASE("coupling table symmetry w(delta) = w(N - delta) > 0") {
    OperatorHandle op = make_operator(ChainGeometry(12));
    for (int delta = 1; delta < 12; ++delta) {
        CHECK(op.coupling.w[delta] > 0.0);
        CHECK(op.coupling.w[delta] ==
              doctest::Approx(op.coupling.w[12 - delta]).epsilon(1e-14));
    }
    CHECK(op.prefactor == doctest::Approx(-2 * kPi * kPi / 144).epsilon(1e-15));
}
