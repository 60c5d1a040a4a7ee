#pragma once

#include <string>
#include <vector>

namespace kym {

// One named pass/fail record: `value` is the measured residual, fitted
// parameter, count, etc., compared against `tolerance` as documented per
// check; `details` is free-form human-readable context.
struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string details;
};

// A batch of checks for one model descriptor (N, sector, species, ...).
// `pass` is maintained as the conjunction of all recorded checks.
struct VerificationReport {
    std::string model;
    std::vector<CheckResult> checks;
    bool pass = true;
    double elapsed_seconds = 0.0;

    void add(CheckResult check) {
        pass = pass && check.pass;
        checks.push_back(std::move(check));
    }
    void merge(const VerificationReport& other) {
        for (const auto& c : other.checks) add(c);
    }
    // Worst (largest) recorded value among checks whose name contains `key`;
    // 0 if none match.
    double worst_value(const std::string& key) const {
        double worst = 0.0;
        for (const auto& c : checks)
            if (c.name.find(key) != std::string::npos && c.value > worst)
                worst = c.value;
        return worst;
    }
};

} // namespace kym
