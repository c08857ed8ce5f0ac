#include "edgesched/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edgesched/errors.hpp"

namespace edgesched::exact {

namespace {

constexpr double kAssignmentCap = 1e6;  // node_count^request_count guard
constexpr double kCompositionCap = 5e6; // per-node C(B-1, m-1) guard

double composition_count(int bandwidth, int parts) {
    // C(bandwidth-1, parts-1), evaluated in doubles; only used for guarding.
    double c = 1.0;
    for (int i = 1; i < parts; ++i) {
        c *= static_cast<double>(bandwidth - i);
        c /= static_cast<double>(i);
        if (c > kCompositionCap)
            return c;
    }
    return c;
}

struct SplitSearch {
    const DelayEvaluator& eval;
    const std::vector<int>& request_ids;
    ObjectiveKind kind;
    Solution& scratch; // assignment already set; bandwidth mutated in place

    std::vector<int> best;
    double best_value = std::numeric_limits<double>::infinity();

    // Enumerates compositions in lexicographic order; keeping only strict
    // improvements therefore leaves the lexicographically smallest minimizer.
    void recurse(std::size_t pos, int remaining) {
        const std::size_t m = request_ids.size();
        if (pos + 1 == m) {
            scratch.bandwidth[request_ids[pos]] = remaining;
            double value = 0.0;
            for (int id : request_ids) {
                const double total = eval.request_total(scratch, id);
                value = kind == ObjectiveKind::kTotal ? value + total
                                                      : std::max(value, total);
            }
            if (value < best_value) {
                best_value = value;
                best.resize(m);
                for (std::size_t i = 0; i < m; ++i)
                    best[i] = scratch.bandwidth[request_ids[i]];
            }
            return;
        }
        const int max_here = remaining - static_cast<int>(m - pos - 1);
        for (int b = 1; b <= max_here; ++b) {
            scratch.bandwidth[request_ids[pos]] = b;
            recurse(pos + 1, remaining - b);
        }
    }
};

} // namespace

std::vector<int> optimal_bandwidth_split(const Scenario& scenario, int node,
                                         const std::vector<int>& request_ids,
                                         int bandwidth_mhz, ObjectiveKind kind) {
    const int m = static_cast<int>(request_ids.size());
    if (m == 0)
        return {};
    if (bandwidth_mhz < m)
        throw InfeasibleInstanceError("node " + std::to_string(node) + ": " +
                                      std::to_string(m) + " requests but only " +
                                      std::to_string(bandwidth_mhz) + " MHz");
    if (composition_count(bandwidth_mhz, m) > kCompositionCap)
        throw InstanceTooLargeError("bandwidth split enumeration too large on node " +
                                    std::to_string(node));

    DelayEvaluator eval(scenario);
    Solution scratch;
    scratch.assignment.assign(scenario.requests.size(), 0);
    scratch.bandwidth.assign(scenario.requests.size(), 1);
    for (int id : request_ids)
        scratch.assignment[id] = node;

    SplitSearch search{eval, request_ids, kind, scratch, {}, {}};
    search.best_value = std::numeric_limits<double>::infinity();
    search.recurse(0, bandwidth_mhz);
    return search.best;
}

ExactResult solve(const Scenario& scenario, ObjectiveKind kind) {
    const int kcount = scenario.request_count();
    const int vcount = scenario.node_count();
    if (std::pow(static_cast<double>(vcount), static_cast<double>(kcount)) > kAssignmentCap)
        throw InstanceTooLargeError("assignment space " + std::to_string(vcount) + "^" +
                                    std::to_string(kcount) + " exceeds the exact-solver guard");

    DelayEvaluator eval(scenario);

    ExactResult result;
    double best_value = std::numeric_limits<double>::infinity();
    bool found = false;

    std::vector<int> assignment(kcount, 0);
    std::vector<std::vector<int>> per_node(vcount);
    Solution scratch;
    scratch.assignment.assign(kcount, 0);
    scratch.bandwidth.assign(kcount, 1);

    for (;;) {
        for (auto& ids : per_node)
            ids.clear();
        for (int k = 0; k < kcount; ++k)
            per_node[assignment[k]].push_back(k);

        bool admissible = true;
        double work = 1.0;
        for (int v = 0; v < vcount && admissible; ++v) {
            const int m = static_cast<int>(per_node[v].size());
            if (m == 0)
                continue;
            if (static_cast<double>(m) > scenario.nodes[v].bandwidth_mhz) {
                admissible = false; // cannot hand every request >= 1 MHz
                break;
            }
            double demand = 0.0;
            for (int id : per_node[v])
                demand += scenario.requests[id].demand_mhz;
            if (demand > scenario.nodes[v].capacity_mhz) {
                admissible = false;
                break;
            }
            work *= composition_count(static_cast<int>(scenario.nodes[v].bandwidth_mhz), m);
        }
        if (admissible && work > kCompositionCap)
            throw InstanceTooLargeError("bandwidth composition space exceeds the guard");

        if (admissible) {
            scratch.assignment = assignment;
            double value = 0.0;
            for (int v = 0; v < vcount; ++v) {
                if (per_node[v].empty())
                    continue;
                SplitSearch search{eval, per_node[v], kind, scratch, {}, {}};
                search.best_value = std::numeric_limits<double>::infinity();
                search.recurse(0, static_cast<int>(scenario.nodes[v].bandwidth_mhz));
                for (std::size_t i = 0; i < per_node[v].size(); ++i)
                    scratch.bandwidth[per_node[v][i]] = search.best[i];
                value = kind == ObjectiveKind::kTotal ? value + search.best_value
                                                      : std::max(value, search.best_value);
            }
            ++result.enumerated;
            // Assignments are visited in lexicographic order and each node's
            // split is its lexicographically smallest minimizer, so keeping
            // strict improvements yields the spec'd tie-break.
            if (value < best_value) {
                best_value = value;
                result.solution = scratch;
                found = true;
            }
        }

        int pos = kcount - 1;
        while (pos >= 0 && assignment[pos] == vcount - 1)
            assignment[pos--] = 0;
        if (pos < 0)
            break;
        ++assignment[pos];
    }

    if (!found)
        throw InfeasibleInstanceError("no assignment satisfies the capacity constraints");
    result.optimum_s = best_value;
    return result;
}

} // namespace edgesched::exact
