#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aromakit {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

// Run the full verification battery; one entry per criterion.
std::vector<CriterionResult> run_acceptance();

// Print one pass/fail line per criterion; returns the number of failures.
int run_acceptance_main(std::ostream& out);

} // namespace aromakit
