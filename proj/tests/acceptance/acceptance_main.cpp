// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <iostream>

#include "expspline/acceptance.hpp"

int main() {
    bool all = true;
    for (int id = 1; id <= expspline::kCriteriaCount; ++id) {
        const expspline::CriterionResult r = expspline::run_criterion(id);
        std::cout << expspline::format_criterion(r) << std::endl;
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
