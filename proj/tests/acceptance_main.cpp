// Acceptance battery entry point: one PASS/FAIL line per criterion on
// stdout, exit status 0 only if every criterion passed.

#include <iostream>

#include "kym/acceptance.hpp"

int main() {
    const auto results = kym::run_acceptance(std::cout);
    return kym::acceptance_passed(results) ? 0 : 1;
}
