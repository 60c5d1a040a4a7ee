#include "kym/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kym/chain.hpp"
#include "kym/hamiltonian.hpp"
#include "kym/spectrum.hpp"
#include "kym/states.hpp"
#include "kym/theory.hpp"
#include "kym/verify.hpp"

namespace kym {

namespace {

using Clock = std::chrono::steady_clock;

std::string chain_prefix(int n) { return "N" + std::to_string(n) + "_"; }

std::string species_tag(Species species) {
    return species == Species::Spinon ? "spinon" : "holon";
}

// Merge with a prefix so check names stay unique when the same verifier runs
// for several chain sizes inside one criterion.
void merge_prefixed(VerificationReport& into, const VerificationReport& from,
                    const std::string& prefix) {
    for (CheckResult check : from.checks) {
        check.name = prefix + check.name;
        into.add(std::move(check));
    }
}

// Exact sector spectra and their label matchings, computed once per
// (species, size) and shared: inclusion and shift-fit criteria use the same
// dense diagonalization.
class SpectrumCache {
public:
    const Eigen::VectorXd& exact(Species species, int n) {
        const auto key = std::make_pair(static_cast<int>(species), n);
        auto it = spectra_.find(key);
        if (it == spectra_.end()) {
            ChainGeometry geometry(n);
            const SectorBasis sector =
                enumerate_sector(geometry, pair_sector(species, n));
            SpectrumOptions options;
            options.with_vectors = false;
            const SpectrumResult result =
                sector_spectrum(make_operator(geometry), sector, options);
            it = spectra_.emplace(key, result.eigenvalues).first;
        }
        return it->second;
    }

    // Matched energies in valid_labels() order; the assignment itself does
    // not depend on the reporting tolerance.
    const std::vector<double>& matched(Species species, int n) {
        const auto key = std::make_pair(static_cast<int>(species), n);
        auto it = matched_.find(key);
        if (it == matched_.end()) {
            std::vector<double> m;
            match_spectrum_to(species, n, exact(species, n), 1e-8, &m);
            it = matched_.emplace(key, std::move(m)).first;
        }
        return it->second;
    }

private:
    std::map<std::pair<int, int>, Eigen::VectorXd> spectra_;
    std::map<std::pair<int, int>, std::vector<double>> matched_;
};

VerificationReport criterion_ground() {
    VerificationReport report;
    for (int n : {2, 4, 6, 8, 10, 12})
        merge_prefixed(report, verify_ground_state(ChainGeometry(n), 1e-10),
                       chain_prefix(n));
    return report;
}

VerificationReport criterion_spinon_identities() {
    VerificationReport report;
    for (int n : {6, 8, 10, 12})
        merge_prefixed(
            report,
            verify_scattering_identities(ChainGeometry(n), Species::Spinon,
                                         1e-9),
            chain_prefix(n));
    return report;
}

VerificationReport criterion_vanishing() {
    VerificationReport report;
    for (int n : {6, 8})
        merge_prefixed(report, verify_vanishing(ChainGeometry(n)),
                       chain_prefix(n));
    return report;
}

VerificationReport criterion_spinon_inclusion(SpectrumCache& cache) {
    VerificationReport report;
    for (int n : {6, 8, 10})
        merge_prefixed(report,
                       match_spectrum_to(Species::Spinon, n,
                                         cache.exact(Species::Spinon, n),
                                         1e-9),
                       chain_prefix(n));
    return report;
}

VerificationReport criterion_holon(SpectrumCache& cache) {
    VerificationReport report;
    for (int n : {6, 8, 10}) {
        merge_prefixed(
            report,
            verify_scattering_identities(ChainGeometry(n), Species::Holon,
                                         1e-9),
            chain_prefix(n));
        merge_prefixed(report,
                       match_spectrum_to(Species::Holon, n,
                                         cache.exact(Species::Holon, n),
                                         1e-8),
                       chain_prefix(n));
    }
    return report;
}

VerificationReport criterion_shift(SpectrumCache& cache) {
    VerificationReport report;
    const auto fit_one = [&](Species species, int n) {
        ShiftFitResult fit =
            fit_shift_to_energies(species, n, cache.matched(species, n));
        merge_prefixed(report, fit.report,
                       chain_prefix(n) + species_tag(species) + "_");
    };
    for (int n : {8, 10, 12}) fit_one(Species::Spinon, n);
    for (int n : {8, 10}) fit_one(Species::Holon, n);
    return report;
}

VerificationReport criterion_spacing() {
    VerificationReport report;
    for (int n = 4; n <= 16; n += 2)
        for (Species species : {Species::Spinon, Species::Holon})
            merge_prefixed(report,
                           verify_momentum_spacing(ChainGeometry(n), species),
                           chain_prefix(n) + species_tag(species) + "_");
    return report;
}

VerificationReport criterion_counting() {
    VerificationReport report;
    for (int n = 1; n <= 24; ++n)
        merge_prefixed(report, verify_state_counting(n), chain_prefix(n));
    return report;
}

VerificationReport criterion_gram() {
    VerificationReport report;
    for (int n : {3, 5, 7, 9})
        merge_prefixed(report, verify_gram_structure(n), chain_prefix(n));
    return report;
}

VerificationReport criterion_operator_symmetries() {
    VerificationReport report;
    for (int n = 2; n <= 10; ++n) {
        ChainGeometry geometry(n);
        const OperatorHandle op = make_operator(geometry);
        for (int q = 0; q <= n; ++q)
            for (int m = 0; m + q <= n; ++m) {
                const SectorBasis basis = enumerate_sector(geometry, {q, m});
                merge_prefixed(report, operator_self_checks(op, basis, 50),
                               chain_prefix(n) + "Q" + std::to_string(q) +
                                   "_M" + std::to_string(m) + "_");
            }
    }
    return report;
}

double fd_velocity(Species species, double momentum, int n) {
    const double h = 1e-5;
    return (dispersion(species, momentum + h, n).energy -
            dispersion(species, momentum - h, n).energy) /
           (2 * h);
}

VerificationReport criterion_dispersion() {
    VerificationReport report;
    for (int n = 4; n <= 32; n += 2) {
        for (Species species : {Species::Spinon, Species::Holon}) {
            const std::string prefix =
                chain_prefix(n) + species_tag(species) + "_";
            const std::vector<PairLabel> labels = valid_labels(species, n);

            // Analytic group velocity vs centered finite difference at
            // every occupied single-particle momentum.
            double worst_fd = 0.0;
            long long crossing_violations = 0;
            for (const PairLabel& label : labels) {
                const ShiftedMomenta p = single_particle_momenta(label, n);
                for (double q : {p.p_m, p.p_n})
                    worst_fd = std::max(
                        worst_fd,
                        std::abs(dispersion(species, q, n).velocity -
                                 fd_velocity(species, q, n)));
                if (dispersion(species, p.p_m, n).velocity <=
                    dispersion(species, p.p_n, n).velocity)
                    ++crossing_violations;
            }
            report.add({prefix + "velocity_fd", worst_fd <= 1e-8, worst_fd,
                        1e-8, "centered difference, h = 1e-5"});

            // Strict monotonicity of the velocity across the domain:
            // decreasing for spinons, increasing for holons.
            const double lo = species == Species::Spinon
                                  ? 0.0
                                  : -std::numbers::pi -
                                        std::numbers::pi / (2.0 * n);
            const double hi = species == Species::Spinon
                                  ? std::numbers::pi
                                  : std::numbers::pi / (2.0 * n);
            const int grid = 512;
            long long monotone_violations = 0;
            double previous = 0.0;
            for (int g = 0; g < grid; ++g) {
                const double q = lo + (hi - lo) * (g + 0.5) / grid;
                const double v = dispersion(species, q, n).velocity;
                if (g > 0) {
                    const bool ok = species == Species::Spinon ? v < previous
                                                               : v > previous;
                    if (!ok) ++monotone_violations;
                }
                previous = v;
            }
            report.add({prefix + "velocity_monotone",
                        monotone_violations == 0,
                        static_cast<double>(monotone_violations), 0.0,
                        "strict across a 512-point domain grid"});

            report.add({prefix + "crossing", crossing_violations == 0,
                        static_cast<double>(crossing_violations), 0.0,
                        "v(p_m) > v(p_n) for every valid label"});
        }
    }
    return report;
}

struct Criterion {
    int number;
    std::string title;
    std::function<VerificationReport()> body;
};

} // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
    SpectrumCache cache;
    const std::vector<Criterion> criteria = {
        {1, "ground-state energy and residual", criterion_ground},
        {2, "two-spinon scattering identities", criterion_spinon_identities},
        {3, "vanishing beyond the orbital window", criterion_vanishing},
        {4, "two-spinon spectrum inclusion",
         [&] { return criterion_spinon_inclusion(cache); }},
        {5, "two-holon identities and inclusion",
         [&] { return criterion_holon(cache); }},
        {6, "statistical shift s = 1/4",
         [&] { return criterion_shift(cache); }},
        {7, "momentum spacing and translation", criterion_spacing},
        {8, "exclusion-statistics counting", criterion_counting},
        {9, "localized-state Gram structure", criterion_gram},
        {10, "operator symmetries", criterion_operator_symmetries},
        {11, "dispersion and crossing velocities", criterion_dispersion},
    };

    std::vector<CriterionResult> results;
    for (const Criterion& criterion : criteria) {
        const auto t0 = Clock::now();
        const VerificationReport report = criterion.body();
        CriterionResult result;
        result.number = criterion.number;
        result.title = criterion.title;
        result.pass = report.pass;
        result.checks_run = report.checks.size();
        for (const CheckResult& check : report.checks)
            if (!check.pass) {
                ++result.checks_failed;
                result.failures.push_back(check);
            }
        result.elapsed_seconds =
            std::chrono::duration<double>(Clock::now() - t0).count();

        char line[160];
        std::snprintf(line, sizeof(line),
                      "[%s] %2d  %-38s %5zu checks %8.2fs",
                      result.pass ? "PASS" : "FAIL", result.number,
                      criterion.title.c_str(), result.checks_run,
                      result.elapsed_seconds);
        out << line << "\n";
        for (const CheckResult& failure : result.failures) {
            std::snprintf(line, sizeof(line),
                          "       - %s: value=%.3e tolerance=%.3e %s",
                          failure.name.c_str(), failure.value,
                          failure.tolerance, failure.details.c_str());
            out << line << "\n";
        }
        out.flush();
        results.push_back(std::move(result));
    }

    std::size_t passed = 0;
    for (const CriterionResult& result : results)
        if (result.pass) ++passed;
    out << "acceptance: " << passed << "/" << results.size()
        << " criteria passed\n";
    out.flush();
    return results;
}

bool acceptance_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.pass; });
}

} // namespace kym
