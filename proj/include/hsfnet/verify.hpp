#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace hsfnet::verify {

enum class Level { Fast, Full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool asserted = true;   // report-only parts never fail the run
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Report {
    std::vector<CriterionResult> criteria;
    // Known formula/measurement gaps, quantified rather than asserted:
    // populated in Full mode.
    nlohmann::json discrepancies = nlohmann::json::object();

    bool all_asserted_passed() const {
        for (const auto& c : criteria)
            if (c.asserted && !c.passed) return false;
        return true;
    }
};

// Runs the verification suite. `progress`, when given, receives one
// PASS/FAIL line per criterion as it completes.
Report run(Level level, std::ostream* progress = nullptr);

}  // namespace hsfnet::verify
