#include "mlie/acceptance.hpp"

#include <fmt/format.h>

int main()
{
    int failed = 0;
    mlie::run_acceptance([&](const mlie::CriterionResult& r) {
        fmt::print("criterion {:2} {} {}: {} [{:.2f}s]\n", r.id, r.pass ? "PASS" : "FAIL", r.name, r.detail, r.seconds);
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    });
    fmt::print("{} of {} criteria passed\n", mlie::kCriteria - failed, mlie::kCriteria);
    return failed == 0 ? 0 : 1;
}
