// Acceptance suite: one pass/fail line per criterion. Exits nonzero if
// any asserted criterion fails.
#include <iostream>

#include "hsfnet/verify.hpp"

int main() {
    auto report = hsfnet::verify::run(hsfnet::verify::Level::Fast, &std::cout);
    size_t passed = 0;
    for (const auto& c : report.criteria)
        if (c.passed) ++passed;
    std::cout << passed << "/" << report.criteria.size() << " criteria passed\n";
    return report.all_asserted_passed() ? 0 : 1;
}
