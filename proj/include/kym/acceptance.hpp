#pragma once

// The full acceptance battery: eleven numbered criteria, each aggregating
// many individual checks (ground states, scattering identities, vanishing,
// spectrum inclusion, shift fits, momentum spacing, counting, Gram
// structure, operator symmetries, dispersion). One PASS/FAIL line per
// criterion is streamed as it completes; failing checks are kept for
// diagnosis. Exact spectra are computed once per (species, size) and shared
// between criteria.

#include <iosfwd>
#include <string>
#include <vector>

#include "kym/report.hpp"

namespace kym {

struct CriterionResult {
    int number = 0;
    std::string title;
    bool pass = false;
    std::size_t checks_run = 0;
    std::size_t checks_failed = 0;
    double elapsed_seconds = 0.0;
    std::vector<CheckResult> failures;
};

// Runs every criterion in order, streaming one line per criterion to `out`
// (plus indented detail lines for any failing checks).
std::vector<CriterionResult> run_acceptance(std::ostream& out);

bool acceptance_passed(const std::vector<CriterionResult>& results);

} // namespace kym
