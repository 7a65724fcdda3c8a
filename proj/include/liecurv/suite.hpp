#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liecurv/types.hpp"

namespace liecurv {

/// One acceptance criterion of the verification suite.
struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    int cases = 0;           // germs / tuples / immersions examined
    double max_residual = 0.0;  // headline residual; meaning noted per criterion
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    bool all_pass = false;
    std::vector<CriterionResult> criteria;
};

/// Runs the full battery of property verdicts over generated germ and
/// immersion batteries. Deterministic in seed: same seed, same report.
/// Heavy batteries fan out through parallel_map; generation stays serial.
SuiteReport run_paper_verification(std::uint64_t seed, const Tolerances& tols = default_tolerances());

/// Deterministic JSON rendering (schema version "1"); carries no timing or
/// environment data, so equal reports serialize to equal bytes.
std::string suite_report_json(const SuiteReport& report);

/// Human-readable rendering; elapsed wall time appears here only.
std::string suite_report_text(const SuiteReport& report, double elapsed_seconds);

} // namespace liecurv
