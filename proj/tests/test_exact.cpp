#include <doctest.h>

#include <limits>
#include <vector>

#include "edgesched/errors.hpp"
#include "edgesched/exact.hpp"
#include "edgesched/scengen.hpp"

using namespace edgesched;

namespace {

Scenario tiny_scenario(int nodes, int requests, double bandwidth, double capacity,
                       std::uint64_t seed) {
    scengen::GenConfig config;
    config.node_count = nodes;
    config.request_count = requests;
    config.bandwidth_mhz = bandwidth;
    config.capacity_mhz = capacity;
    config.seed = seed;
    return scengen::generate(config);
}

// Independently coded checker: enumerate every assignment and every integer
// bandwidth vector with per-node sums <= B_v (not just == B_v), scoring with
// the plain evaluate(). Deliberately shares no code with exact::solve.
struct BruteForce {
    const Scenario& s;
    ObjectiveKind kind;
    double best = std::numeric_limits<double>::infinity();

    void assignments(Solution& sol, int k) {
        if (k == s.request_count()) {
            for (int v = 0; v < s.node_count(); ++v) {
                double demand = 0.0;
                int count = 0;
                for (int i = 0; i < s.request_count(); ++i)
                    if (sol.assignment[i] == v) {
                        demand += s.requests[i].demand_mhz;
                        ++count;
                    }
                if (demand > s.nodes[v].capacity_mhz ||
                    count > static_cast<int>(s.nodes[v].bandwidth_mhz))
                    return;
            }
            std::vector<int> left(s.node_count());
            for (int v = 0; v < s.node_count(); ++v)
                left[v] = static_cast<int>(s.nodes[v].bandwidth_mhz);
            bandwidths(sol, 0, left);
            return;
        }
        for (int v = 0; v < s.node_count(); ++v) {
            sol.assignment[k] = v;
            assignments(sol, k + 1);
        }
    }

    void bandwidths(Solution& sol, int k, std::vector<int>& left) {
        if (k == s.request_count()) {
            const double value = objective(evaluate(s, sol), kind);
            if (value < best)
                best = value;
            return;
        }
        const int v = sol.assignment[k];
        for (int b = 1; b <= left[v]; ++b) {
            sol.bandwidth[k] = b;
            left[v] -= b;
            bandwidths(sol, k + 1, left);
            left[v] += b;
        }
    }

    double run() {
        Solution sol;
        sol.assignment.assign(s.request_count(), 0);
        sol.bandwidth.assign(s.request_count(), 1);
        assignments(sol, 0);
        return best;
    }
};

} // namespace

TEST_CASE("single request takes the whole band") {
    const Scenario s = tiny_scenario(1, 1, 4.0, 1000.0, 3);
    const auto res = exact::solve(s);
    CHECK(res.solution.bandwidth == std::vector<int>{4});
    CHECK(check_feasibility(s, res.solution).empty());
}

TEST_CASE("identical requests split the band evenly") {
    Scenario s = tiny_scenario(1, 2, 4.0, 1000.0, 3);
    s.requests[1] = s.requests[0];
    s.requests[1].id = 1;
    CHECK(exact::solve(s).solution.bandwidth == std::vector<int>{2, 2});

    // Odd band: (2,3) and (3,2) tie exactly, and the lexicographically
    // smallest bandwidth vector is the documented winner.
    s.nodes[0].bandwidth_mhz = 5.0;
    CHECK(exact::solve(s).solution.bandwidth == std::vector<int>{2, 3});
}

TEST_CASE("the distant request receives strictly more bandwidth") {
    Scenario s = tiny_scenario(1, 2, 10.0, 1000.0, 3);
    s.requests[0].size_mbit = 50.0;
    s.requests[1].size_mbit = 50.0;
    s.requests[0].distances_m = {30.0};
    s.requests[1].distances_m = {200.0};
    s.requests[0].demand_mhz = 100.0;
    s.requests[1].demand_mhz = 100.0;

    // Extra band matters most for the request with the worst link, so the
    // max-delay split skews toward the 200 m request. Scoring all 9 splits
    // confirms it (and shows the sum objective prefers the even split: the
    // rate is concave in b, so the unit lost at 30 m costs more than the
    // unit gained at 200 m returns).
    for (const ObjectiveKind kind : {ObjectiveKind::kMakespan, ObjectiveKind::kTotal}) {
        const std::vector<int> split = exact::optimal_bandwidth_split(s, 0, {0, 1}, 10, kind);
        REQUIRE(split.size() == 2);
        CHECK(split[0] + split[1] == 10);

        double best = std::numeric_limits<double>::infinity();
        std::vector<int> best_split;
        for (int b0 = 1; b0 <= 9; ++b0) {
            const Solution sol{{0, 0}, {b0, 10 - b0}};
            const double value = objective(evaluate(s, sol), kind);
            if (value < best) {
                best = value;
                best_split = {b0, 10 - b0};
            }
        }
        CHECK(split == best_split);
        if (kind == ObjectiveKind::kMakespan)
            CHECK(split[1] > split[0]);
    }
}

TEST_CASE("split needs one MHz per request") {
    const Scenario s = tiny_scenario(1, 3, 2.0, 1000.0, 5);
    CHECK_THROWS_AS(exact::optimal_bandwidth_split(s, 0, {0, 1, 2}, 2, ObjectiveKind::kTotal),
                    InfeasibleInstanceError);
}

TEST_CASE("optimum matches the independent checker on random small instances") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Scenario s = tiny_scenario(2, 3, 4.0, 1000.0, seed);
        for (const ObjectiveKind kind : {ObjectiveKind::kTotal, ObjectiveKind::kMakespan}) {
            const auto res = exact::solve(s, kind);
            BruteForce oracle{s, kind};
            const double expected = oracle.run();
            CHECK(res.optimum_s == doctest::Approx(expected).epsilon(1e-9));
            CHECK(objective(evaluate(s, res.solution), kind) ==
                  doctest::Approx(expected).epsilon(1e-9));
            CHECK(check_feasibility(s, res.solution).empty());

            // Full bandwidth use per non-empty node.
            for (int v = 0; v < s.node_count(); ++v) {
                int sum = 0, count = 0;
                for (int k = 0; k < s.request_count(); ++k)
                    if (res.solution.assignment[k] == v) {
                        sum += res.solution.bandwidth[k];
                        ++count;
                    }
                if (count > 0)
                    CHECK(sum == static_cast<int>(s.nodes[v].bandwidth_mhz));
            }
        }
    }
}

TEST_CASE("compute-bound instances force splits") {
    Scenario s = tiny_scenario(2, 4, 6.0, 1.0, 11);
    // Capacity sized so no single node can host everything.
    double total = 0.0;
    for (const Request& r : s.requests)
        total += r.demand_mhz;
    for (EdgeNode& n : s.nodes)
        n.capacity_mhz = 0.75 * total;
    const auto res = exact::solve(s);
    CHECK(check_feasibility(s, res.solution).empty());
    BruteForce oracle{s, ObjectiveKind::kTotal};
    CHECK(res.optimum_s == doctest::Approx(oracle.run()).epsilon(1e-9));
}

TEST_CASE("oversized instances hit the guard") {
    // 3^20 and 2^20 assignments both exceed the 1e6 assignment guard.
    CHECK_THROWS_AS(exact::solve(tiny_scenario(3, 20, 100.0, 1500.0, 1)),
                    InstanceTooLargeError);
    CHECK_THROWS_AS(exact::solve(tiny_scenario(2, 20, 100.0, 1500.0, 1)),
                    InstanceTooLargeError);
    // One assignment, but C(99,7) bandwidth compositions.
    CHECK_THROWS_AS(exact::solve(tiny_scenario(1, 8, 100.0, 5000.0, 1)),
                    InstanceTooLargeError);
}

TEST_CASE("infeasible instances are reported") {
    Scenario s = tiny_scenario(1, 2, 10.0, 1.0, 2);
    s.requests[0].demand_mhz = 40.0;
    s.requests[1].demand_mhz = 40.0;
    s.nodes[0].capacity_mhz = 50.0;
    CHECK_THROWS_AS(exact::solve(s), InfeasibleInstanceError);
}
