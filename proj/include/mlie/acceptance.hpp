#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mlie {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

constexpr int kCriteria = 13;

/// Run one acceptance criterion (1..13); exceptions are reported as failures.
CriterionResult run_criterion(int id);
/// Run all criteria in order; progress receives a line per finished criterion.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& progress = {});

}
