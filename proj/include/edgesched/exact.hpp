#pragma once

#include <vector>

#include "edgesched/problem.hpp"

namespace edgesched::exact {

struct ExactResult {
    Solution solution;
    double optimum_s = 0.0;
    std::int64_t enumerated = 0; // feasible (assignment, split) combinations visited
};

// Brute-force optimum over all assignments x integer bandwidth splits.
// Guarded: throws InstanceTooLargeError when node_count^request_count
// exceeds 1e6 or the per-node composition counts are intractable. Ties are
// broken toward the lexicographically smallest (assignment, bandwidth).
// Every node's split uses its full bandwidth; that is never suboptimal
// because the rate is strictly increasing in b.
ExactResult solve(const Scenario& scenario, ObjectiveKind kind = ObjectiveKind::kTotal);

// Inner subproblem: integer vector over request_ids summing to exactly
// bandwidth_mhz that minimizes the node-local objective (sum or max of the
// assigned requests' total delays). Ties toward the lexicographically
// smallest vector. Throws InfeasibleInstanceError when bandwidth_mhz is
// below the request count (each needs >= 1 MHz).
std::vector<int> optimal_bandwidth_split(const Scenario& scenario, int node,
                                         const std::vector<int>& request_ids,
                                         int bandwidth_mhz,
                                         ObjectiveKind kind = ObjectiveKind::kTotal);

} // namespace edgesched::exact
