#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kym/chain.hpp"
#include "kym/theory.hpp"
#include "kym/verify.hpp"

using namespace kym;

namespace {

// Every check name inside a report must be unique, or downstream JSON
// consumers silently overwrite results.
void require_unique_names(const VerificationReport& report) {
    std::set<std::string> seen;
    for (const CheckResult& check : report.checks)
        REQUIRE(seen.insert(check.name).second);
}

const CheckResult& find_check(const VerificationReport& report,
                              const std::string& name) {
    for (const CheckResult& check : report.checks)
        if (check.name == name) return check;
    REQUIRE_MESSAGE(false, "missing check ", name);
    static CheckResult dummy;
    return dummy;
}

} // namespace

TEST_CASE("ground state verification passes at tight tolerance") {
    for (int n : {4, 6, 8}) {
        VerificationReport report = verify_ground_state(ChainGeometry(n));
        CHECK(report.pass);
        CHECK(report.checks.size() == 2);
        CHECK(find_check(report, "ground_residual").value <= 1e-10);
        CHECK(find_check(report, "ground_energy").value <= 1e-10);
        CHECK(report.elapsed_seconds >= 0.0);
        require_unique_names(report);
    }
}

TEST_CASE("scattering identities hold for every valid label") {
    // Spinons: (M+1)(M+2)/2 labels; holons: one more orbital each way.
    VerificationReport sp6 =
        verify_scattering_identities(ChainGeometry(6), Species::Spinon, 1e-10);
    CHECK(sp6.pass);
    CHECK(sp6.checks.size() == 6);
    require_unique_names(sp6);

    VerificationReport sp8 =
        verify_scattering_identities(ChainGeometry(8), Species::Spinon, 1e-10);
    CHECK(sp8.pass);
    CHECK(sp8.checks.size() == 10);

    VerificationReport ho6 =
        verify_scattering_identities(ChainGeometry(6), Species::Holon, 1e-10);
    CHECK(ho6.pass);
    CHECK(ho6.checks.size() == 10);
    for (const CheckResult& check : ho6.checks)
        CHECK(check.value <= 1e-12);
}

TEST_CASE("single-label verification handles window edges") {
    ChainGeometry chain(6);

    VerificationReport valid =
        verify_scattering_identity(chain, {Species::Spinon, 1, 1}, 1e-10);
    CHECK(valid.pass);
    CHECK(valid.checks.size() == 1);
    CHECK(valid.checks[0].name == "scattering_m1_n1");

    // Orbitals are interchangeable, so an unordered label is canonicalized.
    VerificationReport swapped =
        verify_scattering_identity(chain, {Species::Spinon, 1, 2}, 1e-10);
    CHECK(swapped.checks[0].name == "scattering_m2_n1");

    // Beyond the window the identity degenerates into the vanishing claim.
    VerificationReport beyond =
        verify_scattering_identity(chain, {Species::Spinon, 4, 0}, 1e-10);
    CHECK(beyond.pass);
    CHECK(beyond.checks[0].name == "vanishing_m4_n0");

    CHECK_THROWS_AS(
        verify_scattering_identity(chain, {Species::Holon, 5, 0}, 1e-10),
        std::invalid_argument);
    CHECK_THROWS_AS(
        verify_scattering_identity(chain, {Species::Spinon, 6, 0}, 1e-10),
        std::invalid_argument);
    CHECK_THROWS_AS(
        verify_scattering_identity(chain, {Species::Spinon, 2, -1}, 1e-10),
        std::invalid_argument);
}

TEST_CASE("vanishing report covers the window and keeps its control") {
    VerificationReport report = verify_vanishing(ChainGeometry(6));
    CHECK(report.pass);
    // m = 3..5 with n = 0..m gives 15 vanishing labels plus the alias guard.
    CHECK(report.checks.size() == 16);
    require_unique_names(report);

    const CheckResult& control = find_check(report, "alias_nonzero_m6_n0");
    CHECK(control.pass);
    CHECK(control.value > 1.0); // a genuine state is nowhere near the bound
}

TEST_CASE("predicted pair energies sit inside the exact spectrum") {
    for (int n : {6, 8}) {
        std::vector<double> matched;
        VerificationReport report =
            match_spectrum(ChainGeometry(n), Species::Spinon, 1e-9, &matched);
        CHECK(report.pass);
        CHECK(matched.size() == valid_labels(Species::Spinon, n).size());
        CHECK(find_check(report, "levels_matched").pass);
        CHECK(find_check(report, "worst_match").value <= 1e-9);
        CHECK(find_check(report, "offset_std").value < 1e-10);
        CHECK(find_check(report, "offset_mean").value < 1e-9);
        require_unique_names(report);
    }

    VerificationReport holon =
        match_spectrum(ChainGeometry(8), Species::Holon, 1e-8);
    CHECK(holon.pass);
}

TEST_CASE("a constant offset is exposed, not absorbed") {
    ChainGeometry chain(6);
    std::vector<double> matched;
    match_spectrum(chain, Species::Spinon, 1e-9, &matched);

    const std::vector<PairLabel> labels = valid_labels(Species::Spinon, 6);
    Eigen::VectorXd shifted(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        shifted[static_cast<Eigen::Index>(i)] = matched[i] + 1e-6;
    std::sort(shifted.begin(), shifted.end());

    VerificationReport report =
        match_spectrum_to(Species::Spinon, 6, shifted, 1e-9);
    CHECK_FALSE(report.pass);
    const CheckResult& mean = find_check(report, "offset_mean");
    CHECK_FALSE(mean.pass);
    CHECK(mean.value == doctest::Approx(1e-6).epsilon(1e-6));
    CHECK(find_check(report, "offset_std").pass); // spread stays tiny
    CHECK(mean.details.find("constant convention offset") != std::string::npos);
}

TEST_CASE("shift fit recovers s = 1/4 from synthetic and real spectra") {
    // Self-test: energies generated at s = 1/4 must give the fit nothing to
    // disagree with.
    const std::vector<PairLabel> labels = valid_labels(Species::Spinon, 8);
    std::vector<double> synthetic(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        synthetic[i] = pair_energy_at_shift(labels[i], 8, 0.25);
    ShiftFitResult self = fit_shift_to_energies(Species::Spinon, 8, synthetic);
    CHECK(self.report.pass);
    CHECK(std::abs(self.shift - 0.25) <= 1e-9);
    CHECK(self.objective_minimum <= 1e-18);
    CHECK(self.objective_at_zero > 1e-3);
    CHECK(self.grid_minima == 1);

    // Real spectra: spinons at N = 8, holons at N = 8.
    for (Species species : {Species::Spinon, Species::Holon}) {
        ShiftFitResult fit = fit_statistical_shift(ChainGeometry(8), species);
        CHECK(fit.report.pass);
        CHECK(std::abs(fit.shift - 0.25) <= 1e-6);
        CHECK(fit.objective_at_quarter * 1e3 <= fit.objective_at_zero);
        CHECK(fit.grid_minima == 1);
        require_unique_names(fit.report);
        // The merged report keeps the matching diagnostics around.
        find_check(fit.report, "levels_matched");
        find_check(fit.report, "fit_shift");
    }

    CHECK_THROWS_AS(
        fit_shift_to_energies(Species::Spinon, 8, std::vector<double>(3)),
        std::invalid_argument);
}

TEST_CASE("momentum spacing is exactly rational and matches translation") {
    for (int n : {6, 8}) {
        for (Species species : {Species::Spinon, Species::Holon}) {
            VerificationReport report =
                verify_momentum_spacing(ChainGeometry(n), species);
            CHECK(report.pass);
            CHECK(report.checks.size() == 3);
            CHECK(find_check(report, "spacing_rational").value == 0.0);
            CHECK(find_check(report, "translation_eigenstate").value <= 1e-10);
            CHECK(find_check(report, "translation_spacing").value <= 1e-10);
            require_unique_names(report);
        }
    }
}

TEST_CASE("counting report confirms the full Hilbert space") {
    VerificationReport tiny = verify_state_counting(2);
    CHECK(tiny.pass);
    CHECK(find_check(tiny, "counting_total").value == 4.0);

    VerificationReport big = verify_state_counting(24);
    CHECK(big.pass);
    CHECK(find_check(big, "counting_total").value == 16777216.0);
    CHECK(find_check(big, "orbital_decrement").pass);

    CHECK_THROWS_AS(verify_state_counting(0), std::invalid_argument);
    CHECK_THROWS_AS(verify_state_counting(63), std::invalid_argument);
}

TEST_CASE("gram structure: spinon rank deficiency, holon diagonality") {
    VerificationReport three = verify_gram_structure(3);
    CHECK(three.pass);
    CHECK(find_check(three, "spinon_gram_rank").value == 2.0);
    CHECK(find_check(three, "holon_gram_diagonal").value == 0.0);

    VerificationReport five = verify_gram_structure(5);
    CHECK(five.pass);
    CHECK(find_check(five, "spinon_gram_rank").value == 3.0);

    CHECK_THROWS_AS(verify_gram_structure(4), std::invalid_argument);
    CHECK_THROWS_AS(verify_gram_structure(1), std::invalid_argument);
}

TEST_CASE("verification is deterministic run to run") {
    VerificationReport first =
        match_spectrum(ChainGeometry(6), Species::Spinon, 1e-9);
    VerificationReport second =
        match_spectrum(ChainGeometry(6), Species::Spinon, 1e-9);
    REQUIRE(first.checks.size() == second.checks.size());
    for (std::size_t i = 0; i < first.checks.size(); ++i) {
        CHECK(first.checks[i].name == second.checks[i].name);
        CHECK(first.checks[i].value == second.checks[i].value);
        CHECK(first.checks[i].pass == second.checks[i].pass);
    }
}
