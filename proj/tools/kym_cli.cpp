// Command-line front end: every quantitative claim as a subcommand, human
// summary on stdout, machine-readable JSON (or CSV spectra) written
// atomically to --out. Exit status: 0 all checks passed, 1 a check failed,
// 2 usage or configuration error, 3 capacity or convergence error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kym/acceptance.hpp"
#include "kym/chain.hpp"
#include "kym/errors.hpp"
#include "kym/hamiltonian.hpp"
#include "kym/report.hpp"
#include "kym/spectrum.hpp"
#include "kym/states.hpp"
#include "kym/theory.hpp"
#include "kym/verify.hpp"

namespace {

using nlohmann::json;
using namespace kym;

constexpr const char* kToolVersion = "1.0.0";

struct Options {
    int n = 0;
    std::string species = "spinon";
    double tol = 1e-9;
    std::size_t dense_limit = 6000;
    int threads = 0;
    std::string out;
    std::string format = "json";
    unsigned seed = 42;
    // quantize
    double theta = 0.0;
    double length = 0.0;
    int k = 0; // quantize: how many values; spectrum: iterative pair count
};

Species parse_species(const std::string& name) {
    return name == "holon" ? Species::Holon : Species::Spinon;
}

// Atomic write: temp file in place, then rename.
void write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
        if (!stream) throw std::runtime_error("cannot open " + tmp);
        stream << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

json report_json(const std::string& command, const json& config,
                 const VerificationReport& report) {
    json checks = json::array();
    for (const CheckResult& check : report.checks)
        checks.push_back({{"name", check.name},
                          {"pass", check.pass},
                          {"value", check.value},
                          {"tolerance", check.tolerance},
                          {"details", check.details}});
    return json{{"tool_version", kToolVersion},
                {"command", command},
                {"config", config},
                {"checks", checks},
                {"pass", report.pass},
                {"elapsed_seconds", report.elapsed_seconds}};
}

// Human summary: one line per check, failures called out by name with their
// residuals, final verdict line.
void print_summary(const VerificationReport& report) {
    for (const CheckResult& check : report.checks)
        std::printf("  [%s] %-28s value=%.3e tolerance=%.3e\n",
                    check.pass ? "PASS" : "FAIL", check.name.c_str(),
                    check.value, check.tolerance);
    std::size_t failed = 0;
    for (const CheckResult& check : report.checks)
        if (!check.pass) ++failed;
    if (failed == 0)
        std::printf("%zu checks, all passed (%.2f s)\n", report.checks.size(),
                    report.elapsed_seconds);
    else
        std::printf("FAILED %zu of %zu checks (%.2f s)\n", failed,
                    report.checks.size(), report.elapsed_seconds);
}

int finish(const std::string& command, const json& config,
           const VerificationReport& report, const Options& opt) {
    print_summary(report);
    if (!opt.out.empty())
        write_file(opt.out, report_json(command, config, report).dump(2) + "\n");
    return report.pass ? 0 : 1;
}

int run_spectrum(const Options& opt) {
    const Species species = parse_species(opt.species);
    ChainGeometry geometry(opt.n);
    const SectorBasis sector =
        enumerate_sector(geometry, pair_sector(species, opt.n));
    const OperatorHandle op = make_operator(geometry);

    SpectrumOptions options;
    options.dense_limit = opt.dense_limit;
    options.seed = opt.seed;
    if (opt.k > 0) { // opt into the iterative path for large sectors
        options.mode = SolverMode::Iterative;
        options.k = opt.k;
    }
    if (opt.tol > 0) options.tolerance = opt.tol;
    VerificationReport report;
    report.model = "spectrum N=" + std::to_string(opt.n) + " " + opt.species;
    const auto t0 = std::chrono::steady_clock::now();
    const SpectrumResult result = sector_spectrum(op, sector, options);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    const double worst =
        result.residuals.size() > 0 ? result.residuals.maxCoeff() : 0.0;
    const double tol = options.tolerance > 0
                           ? options.tolerance
                           : (options.mode == SolverMode::Dense
                                  ? kDenseTolerance
                                  : kIterativeTolerance);
    report.add({"spectrum_residuals", worst <= tol, worst, tol,
                std::to_string(result.eigenvalues.size()) +
                    " eigenpairs, worst relative residual"});

    json config{{"n", opt.n},          {"species", opt.species},
                {"tol", opt.tol},      {"dense_limit", opt.dense_limit},
                {"seed", opt.seed},    {"k", opt.k},
                {"format", opt.format}};

    std::printf("sector Q=%d M_up=%d dim=%zu: %lld eigenvalues\n",
                sector.key.n_holes, sector.key.n_up, sector.size(),
                static_cast<long long>(result.eigenvalues.size()));
    const Eigen::Index show = std::min<Eigen::Index>(5, result.eigenvalues.size());
    for (Eigen::Index i = 0; i < show; ++i)
        std::printf("  E[%lld] = %+.12f  K = %+.6f\n",
                    static_cast<long long>(i), result.eigenvalues[i],
                    result.momenta.size() > i ? result.momenta[i] : 0.0);

    if (!opt.out.empty() && opt.format == "csv") {
        std::string csv = "sector_Q,sector_Mup,index,energy,momentum_K\n";
        char row[128];
        for (Eigen::Index i = 0; i < result.eigenvalues.size(); ++i) {
            std::snprintf(row, sizeof(row), "%d,%d,%lld,%.17g,%.17g\n",
                          sector.key.n_holes, sector.key.n_up,
                          static_cast<long long>(i), result.eigenvalues[i],
                          result.momenta.size() > i ? result.momenta[i]
                                                    : std::nan(""));
            csv += row;
        }
        write_file(opt.out, csv);
        return report.pass ? 0 : 1;
    }
    return finish("spectrum", config, report, opt);
}

int run_verify(const std::string& target, const Options& opt) {
    ChainGeometry geometry(opt.n);
    VerificationReport report;
    if (target == "ground")
        report = verify_ground_state(geometry, opt.tol);
    else
        report = verify_scattering_identities(geometry,
                                              parse_species(target), opt.tol);
    json config{{"n", opt.n}, {"target", target}, {"tol", opt.tol}};
    return finish("verify " + target, config, report, opt);
}

int run_fit_shift(const Options& opt) {
    const Species species = parse_species(opt.species);
    ShiftFitResult fit = fit_statistical_shift(ChainGeometry(opt.n), species);
    std::printf("fitted shift s = %.9f (objective %.3e at minimum, %.3e at "
                "s=0)\n",
                fit.shift, fit.objective_minimum, fit.objective_at_zero);
    json config{{"n", opt.n}, {"species", opt.species}, {"tol", opt.tol}};
    return finish("fit-shift", config, fit.report, opt);
}

int run_spacing(const Options& opt) {
    VerificationReport report = verify_momentum_spacing(
        ChainGeometry(opt.n), parse_species(opt.species));
    json config{{"n", opt.n}, {"species", opt.species}};
    return finish("spacing", config, report, opt);
}

int run_count(const Options& opt) {
    const CountingReport counts = hilbert_dimension(opt.n);
    std::printf("%llu\n", static_cast<unsigned long long>(counts.total));
    VerificationReport report = verify_state_counting(opt.n);
    json config{{"n", opt.n}};
    return finish("count", config, report, opt);
}

int run_gram(const Options& opt) {
    VerificationReport report = verify_gram_structure(opt.n);
    json config{{"n", opt.n}};
    return finish("gram", config, report, opt);
}

int run_quantize(const Options& opt) {
    QuantizationRule rule;
    rule.theta = opt.theta;
    if (opt.length > 0) {
        rule.kind = QuantizationRule::Kind::MomentumSpacing1D;
        rule.length = opt.length;
    } else {
        rule.kind = QuantizationRule::Kind::RelativeAngularMomentum2D;
    }
    const std::vector<double> values = allowed_values(rule, opt.k);
    std::string list;
    for (double v : values) {
        if (!list.empty()) list += " ";
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%g", v);
        list += buffer;
    }
    std::printf("allowed %s: %s\n",
                opt.length > 0 ? "dp*L/(2 pi)" : "l_z", list.c_str());

    VerificationReport report;
    report.model = "quantize";
    report.add({"allowed_values", true, static_cast<double>(values.size()),
                static_cast<double>(opt.k), list});
    json config{{"theta", opt.theta}, {"length", opt.length}, {"k", opt.k}};
    return finish("quantize", config, report, opt);
}

int run_suite(const Options& opt) {
    const std::vector<CriterionResult> results = run_acceptance(std::cout);
    VerificationReport report;
    report.model = "acceptance suite";
    for (const CriterionResult& result : results) {
        char name[64];
        std::snprintf(name, sizeof(name), "criterion_%02d", result.number);
        report.add({name, result.pass,
                    static_cast<double>(result.checks_failed), 0.0,
                    result.title + " (" + std::to_string(result.checks_run) +
                        " checks)"});
        report.elapsed_seconds += result.elapsed_seconds;
    }
    if (!opt.out.empty())
        write_file(opt.out,
                   report_json("suite", json{{"seed", opt.seed}}, report)
                           .dump(2) +
                       "\n");
    return acceptance_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification suite for an inverse-square t-J chain"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* cmd, bool needs_n) {
        if (needs_n)
            cmd->add_option("--n", opt.n, "chain size")->required();
        cmd->add_option("--tol", opt.tol, "check tolerance")
            ->capture_default_str();
        cmd->add_option("--dense-limit", opt.dense_limit,
                        "largest sector diagonalized densely")
            ->capture_default_str();
        cmd->add_option("--threads", opt.threads, "worker threads (0 = all)");
        cmd->add_option("--out", opt.out, "report file path");
        cmd->add_option("--format", opt.format, "report format")
            ->capture_default_str()
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--seed", opt.seed, "seed for random-vector checks")
            ->capture_default_str();
    };
    const auto add_species = [&](CLI::App* cmd) {
        cmd->add_option("--species", opt.species, "quasiparticle species")
            ->capture_default_str()
            ->check(CLI::IsMember({"spinon", "holon"}));
    };

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "momentum-resolved spectrum of a two-particle sector");
    add_common(spectrum, true);
    add_species(spectrum);
    spectrum->add_option(
        "--k", opt.k, "lowest eigenpairs via the iterative solver (0 = all, "
                      "densely)");

    CLI::App* verify = app.add_subcommand(
        "verify", "ground state or scattering identities");
    std::string target;
    verify->add_option("target", target, "ground | spinon | holon")
        ->required()
        ->check(CLI::IsMember({"ground", "spinon", "holon"}));
    add_common(verify, true);

    CLI::App* fit = app.add_subcommand(
        "fit-shift", "least-squares statistical shift from the exact spectrum");
    add_common(fit, true);
    add_species(fit);

    CLI::App* spacing = app.add_subcommand(
        "spacing", "rational momentum spacing and translation consistency");
    add_common(spacing, true);
    add_species(spacing);

    CLI::App* count =
        app.add_subcommand("count", "exclusion-statistics state counting");
    add_common(count, true);

    CLI::App* gram = app.add_subcommand(
        "gram", "Gram structure of localized states (odd chains)");
    add_common(gram, true);

    CLI::App* quantize = app.add_subcommand(
        "quantize", "allowed anyonic quantum numbers for a crossing phase");
    quantize->add_option("--theta", opt.theta, "statistical angle in (-pi, pi]")
        ->required();
    quantize->add_option("--length", opt.length,
                         "ring circumference (omit for the 2D rule)");
    quantize->add_option("--k", opt.k, "how many allowed values")->required();
    add_common(quantize, false);

    CLI::App* suite =
        app.add_subcommand("suite", "the full acceptance battery");
    add_common(suite, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (opt.format == "csv" && !spectrum->parsed()) {
        std::fprintf(stderr, "error: --format csv is spectrum-only\n");
        return 2;
    }
#ifdef _OPENMP
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
#endif

    try {
        if (spectrum->parsed()) return run_spectrum(opt);
        if (verify->parsed()) return run_verify(target, opt);
        if (fit->parsed()) return run_fit_shift(opt);
        if (spacing->parsed()) return run_spacing(opt);
        if (count->parsed()) return run_count(opt);
        if (gram->parsed()) return run_gram(opt);
        if (quantize->parsed()) return run_quantize(opt);
        if (suite->parsed()) return run_suite(opt);
    } catch (const CapacityError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
