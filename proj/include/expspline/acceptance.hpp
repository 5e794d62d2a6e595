#pragma once

#include <string>
#include <vector>

namespace expspline {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriteriaCount = 12;

// Runs one criterion (1..12). Exceptions inside a criterion become a FAIL
// with the message as detail.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

// "PASS [ 1] name: detail (0.12 s)"
std::string format_criterion(const CriterionResult& r);

}  // namespace expspline
