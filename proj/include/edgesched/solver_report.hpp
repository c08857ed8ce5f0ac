#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgesched/problem.hpp"

namespace edgesched {

struct CurvePoint {
    std::int64_t evaluations = 0;
    double best_s = 0.0; // best-so-far fitness at that evaluation count
};

/// What every solver hands back to the harness.
struct SolverReport {
    std::string solver;
    Solution best;
    DelayReport delays;
    ObjectiveKind kind = ObjectiveKind::kTotal;
    double objective_s = 0.0;
    std::int64_t evaluations = 0;
    double wall_time_s = 0.0;
    std::vector<CurvePoint> curve;
};

std::string solver_report_to_json(const SolverReport& report);

} // namespace edgesched
