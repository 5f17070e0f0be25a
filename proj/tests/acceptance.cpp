// ============================================================================
//  acceptance - the release gate, one verdict line per criterion
//
//  Runs the full-scale self-check: randomized engine agreement, both
//  diagonalization pipelines, simulator classification, the worked
//  alternation example, bisimilarity formulas against partition refinement,
//  replacement normalization, and the parity solver against strategy
//  enumeration.  Exits with the number of failed criteria.
// ============================================================================
#include <cstdio>

#include "polymu/sweep.hpp"

int main() {
    polymu::SelfCheckOptions opt;  // full scale, fixed seed
    std::vector<polymu::CriterionOutcome> outcomes = polymu::run_selfcheck(opt);
    int failed = 0;
    for (const auto& o : outcomes) {
        std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", o.name.c_str(),
                    o.summary.c_str());
        if (!o.passed) ++failed;
    }
    std::printf("%d/%d criteria passed\n", static_cast<int>(outcomes.size()) - failed,
                static_cast<int>(outcomes.size()));
    return failed;
}
