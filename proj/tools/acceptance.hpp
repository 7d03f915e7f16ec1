#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace scissors::accept {

struct Options
{
    std::uint64_t seed = 0;
    std::string fixture;  // "" or "corrupt-boundary"
};

struct CriterionResult
{
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

std::vector<CriterionResult> run_all(const Options& options);

/// One line per criterion; timings are left out when `timings` is false so
/// that two runs with the same seed print identical reports.
void print_report(std::ostream& out, const std::vector<CriterionResult>& results, bool timings);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace scissors::accept
