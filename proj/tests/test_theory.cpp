#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kym/theory.hpp"

using namespace kym;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("dispersion: pinned points, symmetry, domains") {
    DispersionPoint sp = dispersion(Species::Spinon, kPi / 2, 16);
    CHECK(sp.energy == doctest::Approx(1.2385196929101392).epsilon(1e-14));
    CHECK(sp.velocity == doctest::Approx(0.0));
    CHECK(sp.in_domain);

    DispersionPoint ho = dispersion(Species::Holon, 0.0, 8);
    CHECK(ho.energy == doctest::Approx(-0.019276571095877652).epsilon(1e-14));
    CHECK(ho.velocity == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(ho.in_domain);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1e-3, kPi - 1e-3);
    for (int t = 0; t < 50; ++t) {
        const double q = u(rng);
        CHECK(dispersion(Species::Spinon, q, 12).energy ==
              doctest::Approx(dispersion(Species::Spinon, kPi - q, 12).energy)
                  .epsilon(1e-13));
    }

    CHECK_FALSE(dispersion(Species::Spinon, -0.1, 8).in_domain);
    CHECK_FALSE(dispersion(Species::Spinon, kPi + 0.1, 8).in_domain);
    CHECK_FALSE(dispersion(Species::Holon, 0.5, 8).in_domain);
    CHECK_FALSE(dispersion(Species::Holon, -kPi - 0.5, 8).in_domain);
    CHECK(dispersion(Species::Holon, -kPi, 8).in_domain);
}

TEST_CASE("velocity equals the centered finite difference of the energy") {
    const double h = 1e-5;
    for (Species species : {Species::Spinon, Species::Holon})
        for (int n : {6, 12, 32})
            for (int i = 1; i < 40; ++i) {
                const double p = species == Species::Spinon
                                     ? kPi * i / 40
                                     : -kPi + kPi * i / 40;
                const double fd =
                    (dispersion(species, p + h, n).energy -
                     dispersion(species, p - h, n).energy) / (2 * h);
                CHECK(std::abs(dispersion(species, p, n).velocity - fd) < 1e-8);
            }
}

TEST_CASE("velocity monotonicity and the unidirectional-crossing condition") {
    // v = pi/2 - q strictly decreasing; v_ho = pi/2 + p strictly increasing.
    const int grid = 1000;
    for (int i = 0; i + 1 < grid; ++i) {
        const double q0 = kPi * (i + 0.5) / grid, q1 = kPi * (i + 1.5) / grid;
        CHECK(dispersion(Species::Spinon, q1, 8).velocity <
              dispersion(Species::Spinon, q0, 8).velocity);
        const double p0 = -kPi - kPi / 16 + (kPi + kPi / 8) * (i + 0.5) / grid;
        const double p1 = -kPi - kPi / 16 + (kPi + kPi / 8) * (i + 1.5) / grid;
        CHECK(dispersion(Species::Holon, p1, 8).velocity >
              dispersion(Species::Holon, p0, 8).velocity);
    }
    // The faster particle is always the one with the larger label.
    for (int n = 4; n <= 32; n += 2)
        for (Species species : {Species::Spinon, Species::Holon})
            for (const PairLabel& label : valid_labels(species, n)) {
                if (label.m == label.n) continue;
                ShiftedMomenta mom = single_particle_momenta(label, n);
                CHECK(dispersion(species, mom.p_m, n).velocity >
                      dispersion(species, mom.p_n, n).velocity);
            }
}

TEST_CASE("shifted momenta: pinned values, ranges, spacing law") {
    ShiftedMomenta sp = single_particle_momenta({Species::Spinon, 7, 0}, 16);
    CHECK(sp.p_m == doctest::Approx(0.09817477042468115).epsilon(1e-13));
    CHECK(sp.p_n == doctest::Approx(3.043417883165112).epsilon(1e-13));
    CHECK(sp.p_m + sp.p_n == doctest::Approx(kPi).epsilon(1e-13));

    ShiftedMomenta ho = single_particle_momenta({Species::Holon, 0, 0}, 8);
    CHECK(ho.p_m == doctest::Approx(-15 * kPi / 16).epsilon(1e-13));
    CHECK(ho.p_n == doctest::Approx(-17 * kPi / 16).epsilon(1e-13));

    for (int n : {4, 8, 16}) {
        for (const PairLabel& label : valid_labels(Species::Spinon, n)) {
            ShiftedMomenta mom = single_particle_momenta(label, n);
            CHECK(mom.p_m < mom.p_n);            // q_m < q_n
            CHECK(mom.p_m > 0.0);
            CHECK(mom.p_n < kPi);
            CHECK(mom.p_n - mom.p_m ==
                  doctest::Approx(2 * kPi / n * (label.m - label.n + 0.5))
                      .epsilon(1e-12));
        }
        for (const PairLabel& label : valid_labels(Species::Holon, n)) {
            ShiftedMomenta mom = single_particle_momenta(label, n);
            CHECK(mom.p_n < mom.p_m);
            CHECK(mom.p_n >= -kPi - kPi / (2 * n) - 1e-12);
            CHECK(mom.p_m <= kPi / (2 * n) + 1e-12);
        }
    }
    CHECK_THROWS_AS(single_particle_momenta({Species::Spinon, 9, 0}, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(single_particle_momenta({Species::Spinon, 1, 2}, 8),
                    std::invalid_argument);
    CHECK_THROWS_AS(single_particle_momenta({Species::Spinon, 1, 0}, 7),
                    std::invalid_argument);
}

TEST_CASE("pair energies: pinned values and formula consistency") {
    CHECK(pair_energy({Species::Spinon, 2, 0}, 6) ==
          doctest::Approx(kPi * kPi / 24).epsilon(1e-13));
    CHECK(pair_energy({Species::Spinon, 0, 0}, 6) ==
          doctest::Approx(0.9595448723281322).epsilon(1e-13));
    CHECK(pair_energy({Species::Holon, 1, 0}, 6) ==
          doctest::Approx(-1.2337005501361695).epsilon(1e-13));
    CHECK(pair_energy({Species::Holon, 1, 1}, 4) ==
          doctest::Approx(-3.0842513753404246).epsilon(1e-13));
    CHECK(pair_energy({Species::Holon, 3, 0}, 8) ==
          doctest::Approx(-0.7710628438351057).epsilon(1e-13));
    CHECK(ground_energy(2) == doctest::Approx(-kPi * kPi / 8).epsilon(1e-15));

    // E_mn is E_0 plus the dispersion evaluated on the momentum pair.
    for (int n : {6, 10})
        for (Species species : {Species::Spinon, Species::Holon})
            for (const PairLabel& label : valid_labels(species, n)) {
                ShiftedMomenta mom = single_particle_momenta(label, n);
                CHECK(pair_energy(label, n) ==
                      doctest::Approx(ground_energy(n) +
                                      dispersion(species, mom.p_m, n).energy +
                                      dispersion(species, mom.p_n, n).energy)
                          .epsilon(1e-13));
            }
}

TEST_CASE("scattering terms: l_max, coefficients, one-directional targets") {
    CHECK(scattering_terms({Species::Spinon, 2, 0}, 6).empty());

    auto sp = scattering_terms({Species::Spinon, 1, 1}, 6);
    REQUIRE(sp.size() == 1);
    CHECK(sp[0].target_m == 2);
    CHECK(sp[0].target_n == 0);
    CHECK(sp[0].coefficient == doctest::Approx(-kPi * kPi / 9).epsilon(1e-13));

    auto ho = scattering_terms({Species::Holon, 3, 0}, 8);
    REQUIRE(ho.size() == 1);
    CHECK(ho[0].target_m == 2);
    CHECK(ho[0].target_n == 1);
    CHECK(ho[0].coefficient ==
          doctest::Approx(0.9252754126021273).epsilon(1e-13));

    // Terminal symmetric target gets half the coefficient.
    auto halved = scattering_terms({Species::Holon, 2, 0}, 8);
    REQUIRE(halved.size() == 1);
    CHECK(halved[0].target_m == 1);
    CHECK(halved[0].target_n == 1);
    CHECK(halved[0].coefficient ==
          doctest::Approx(0.30842513753404244).epsilon(1e-13));

    for (int n : {6, 8, 12})
        for (Species species : {Species::Spinon, Species::Holon})
            for (const PairLabel& label : valid_labels(species, n))
                for (const ScatteringTerm& term : scattering_terms(label, n)) {
                    // Targets stay valid and keep m + n fixed.
                    CHECK(label_valid({species, term.target_m, term.target_n}, n));
                    CHECK(term.target_m + term.target_n == label.m + label.n);
                    if (species == Species::Spinon) {
                        CHECK(term.target_m - term.target_n >
                              label.m - label.n);
                        CHECK(term.coefficient < 0.0);
                    } else {
                        CHECK(term.target_m - term.target_n <
                              label.m - label.n);
                        CHECK(term.coefficient > 0.0);
                    }
                }
}

TEST_CASE("quantization rules: bosons, fermions, half-fermions") {
    using Kind = QuantizationRule::Kind;
    QuantizationRule fermi{kPi, Kind::MomentumSpacing1D, 2 * kPi};
    auto vf = allowed_values(fermi, 3);
    CHECK(vf == std::vector<double>{1.0, 2.0, 3.0});
    CHECK_FALSE(allows(fermi, 0.0));   // Pauli: no zero spacing

    QuantizationRule bose{0.0, Kind::MomentumSpacing1D, 2 * kPi};
    CHECK(allowed_values(bose, 3) == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(allows(bose, 0.0));

    QuantizationRule half{kPi / 2, Kind::MomentumSpacing1D, 6.0};
    auto vh = allowed_values(half, 3);
    REQUIRE(vh.size() == 3);
    CHECK(vh[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(vh[1] == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(vh[2] == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(allows(half, 7.5));
    CHECK_FALSE(allows(half, 1.0));
    CHECK_FALSE(allows(half, -0.5));

    QuantizationRule lz{kPi / 2, Kind::RelativeAngularMomentum2D, 0.0};
    auto vz = allowed_values(lz, 3);
    REQUIRE(vz.size() == 3);
    CHECK(vz[0] == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(vz[1] == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(vz[2] == doctest::Approx(5.5).epsilon(1e-14));
    CHECK(allows(lz, -0.5));           // negative values stay allowed
    CHECK_FALSE(allows(lz, 0.5));

    CHECK_THROWS_AS(allowed_values({4.0, Kind::MomentumSpacing1D, 1.0}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(allowed_values({0.0, Kind::MomentumSpacing1D, 0.0}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(allowed_values(half, 0), std::invalid_argument);
}

TEST_CASE("state counting: 2^N with one orbital lost per two spinons") {
    CountingReport r2 = hilbert_dimension(2);
    REQUIRE(r2.rows.size() == 2);
    CHECK(r2.rows[0].states == 1);
    CHECK(r2.rows[1].states == 3);
    CHECK(r2.total == 4);

    CountingReport r4 = hilbert_dimension(4);
    REQUIRE(r4.rows.size() == 3);
    CHECK(r4.rows[0].states == 1);
    CHECK(r4.rows[1].states == 10);
    CHECK(r4.rows[2].states == 5);
    CHECK(r4.rows[0].orbitals == 3);
    CHECK(r4.rows[1].orbitals == 2);
    CHECK(r4.rows[2].orbitals == 1);
    CHECK(r4.total == 16);

    CHECK(hilbert_dimension(20).total == 1048576);

    for (int n = 1; n <= 24; ++n) {
        CountingReport report = hilbert_dimension(n);
        CHECK(report.total == (std::uint64_t{1} << n));
        for (std::size_t i = 1; i < report.rows.size(); ++i) {
            CHECK(report.rows[i].n_spinons == report.rows[i - 1].n_spinons + 2);
            CHECK(report.rows[i].orbitals == report.rows[i - 1].orbitals - 1);
        }
    }
}

TEST_CASE("label bookkeeping") {
    CHECK(orbital_cutoff(Species::Spinon, 8) == 3);
    CHECK(orbital_cutoff(Species::Holon, 8) == 4);
    CHECK(valid_labels(Species::Spinon, 8).size() == 10);
    CHECK(valid_labels(Species::Holon, 8).size() == 15);
    CHECK(valid_labels(Species::Spinon, 12).size() == 21);
    CHECK(label_valid({Species::Spinon, 3, 3}, 8));
    CHECK_FALSE(label_valid({Species::Spinon, 4, 0}, 8));
    CHECK(label_valid({Species::Holon, 4, 0}, 8));
    CHECK_FALSE(label_valid({Species::Holon, 5, 0}, 8));
    CHECK_FALSE(label_valid({Species::Spinon, 1, 0}, 7));
}
