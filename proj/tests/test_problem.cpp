#include <doctest.h>

#include <stdexcept>

#include "edgesched/errors.hpp"
#include "edgesched/json_io.hpp"
#include "edgesched/problem.hpp"
#include "edgesched/rng.hpp"
#include "edgesched/scengen.hpp"

using namespace edgesched;

namespace {

// One node (B=100, C=1500) and one request (L=50, c=100, d=100 m).
Scenario single_request_scenario() {
    Scenario s;
    s.nodes = {{0, 100.0, 1500.0}};
    Request r;
    r.id = 0;
    r.size_mbit = 50.0;
    r.demand_mhz = 100.0;
    r.distances_m = {100.0};
    s.requests = {r};
    return s;
}

Scenario two_node_scenario() {
    Scenario s;
    s.nodes = {{0, 100.0, 1500.0}, {1, 100.0, 1500.0}};
    for (int k = 0; k < 2; ++k) {
        Request r;
        r.id = k;
        r.size_mbit = 50.0;
        r.demand_mhz = 100.0;
        r.distances_m = {120.0, 120.0};
        s.requests.push_back(r);
    }
    return s;
}

} // namespace

TEST_CASE("delay pieces on the reference request") {
    const Scenario s = single_request_scenario();
    const Solution sol{{0}, {10}};
    CHECK(transmission_delay(s, sol, 0) == doctest::Approx(0.388).epsilon(0.01));
    CHECK(processing_delay(s, sol, 0) == doctest::Approx(0.5));

    const DelayReport report = evaluate(s, sol);
    CHECK(report.per_request.size() == 1);
    CHECK(report.sum_total_s == doctest::Approx(0.888).epsilon(0.01));
    CHECK(report.sum_total_s == report.max_total_s);
}

TEST_CASE("processing delay cases") {
    Scenario s = single_request_scenario();
    const Solution sol{{0}, {10}};
    s.requests[0].size_mbit = 150.0;
    s.requests[0].demand_mhz = 150.0;
    CHECK(processing_delay(s, sol, 0) == doctest::Approx(1.0));
    s.requests[0].size_mbit = 0.0; // degenerate empty job, in-memory only
    CHECK(processing_delay(s, sol, 0) == 0.0);
    s.requests[0].demand_mhz = 0.0;
    CHECK_THROWS_AS(processing_delay(s, sol, 0), std::domain_error);
}

TEST_CASE("zero-size jobs produce a zero report") {
    Scenario s = two_node_scenario();
    for (Request& r : s.requests)
        r.size_mbit = 0.0;
    const Solution sol{{0, 1}, {100, 100}};
    const DelayReport report = evaluate(s, sol);
    CHECK(report.sum_total_s == 0.0);
    CHECK(report.max_total_s == 0.0);
}

TEST_CASE("symmetric requests get identical totals") {
    const Scenario s = two_node_scenario();
    const Solution sol{{0, 1}, {100, 100}};
    const DelayReport report = evaluate(s, sol);
    CHECK(report.per_request[0].total_s == report.per_request[1].total_s);
}

TEST_CASE("objective kinds") {
    DelayReport report;
    report.sum_total_s = 2.0;
    report.max_total_s = 0.9;
    CHECK(objective(report, ObjectiveKind::kTotal) == 2.0);
    CHECK(objective(report, ObjectiveKind::kMakespan) == 0.9);
}

TEST_CASE("bandwidth feasibility violation carries the excess") {
    Scenario s = two_node_scenario();
    s.nodes = {{0, 100.0, 1500.0}};
    for (Request& r : s.requests)
        r.distances_m = {120.0};
    const Solution sol{{0, 0}, {60, 50}};
    const auto violations = check_feasibility(s, sol);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == Violation::Kind::kBandwidthCapacity);
    CHECK(violations[0].node == 0);
    CHECK(violations[0].excess == doctest::Approx(10.0));
}

TEST_CASE("compute boundary is inclusive") {
    Scenario s = two_node_scenario();
    s.requests[0].demand_mhz = 700.0;
    s.requests[1].demand_mhz = 800.0; // exactly C = 1500 together
    const Solution sol{{0, 0}, {50, 50}};
    CHECK(check_feasibility(s, sol).empty());
    s.requests[1].demand_mhz = 800.5;
    const auto violations = check_feasibility(s, sol);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == Violation::Kind::kComputeCapacity);
    CHECK(violations[0].excess == doctest::Approx(0.5));
}

TEST_CASE("near-zero demands never trip the compute check") {
    Scenario s = two_node_scenario();
    for (Request& r : s.requests)
        r.demand_mhz = 1e-9;
    const Solution sol{{0, 0}, {50, 50}};
    CHECK(check_feasibility(s, sol).empty());
}

TEST_CASE("shape violations are reported") {
    const Scenario s = two_node_scenario();
    CHECK(!check_feasibility(s, Solution{{0, 5}, {50, 50}}).empty());
    CHECK(!check_feasibility(s, Solution{{0, 1}, {0, 50}}).empty());
    CHECK(!check_feasibility(s, Solution{{0}, {50}}).empty());
}

TEST_CASE("more bandwidth strictly lowers the total") {
    const Scenario s = two_node_scenario();
    const Solution base{{0, 1}, {40, 100}};
    Solution more = base;
    more.bandwidth[0] = 41;
    CHECK(evaluate(s, more).sum_total_s < evaluate(s, base).sum_total_s);
}

TEST_CASE("feasible means the recomputed sums fit") {
    const scengen::GenConfig config;
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        scengen::GenConfig c = config;
        c.seed = trial;
        const Scenario s = scengen::generate(c);
        Solution sol;
        sol.assignment.resize(s.requests.size());
        sol.bandwidth.resize(s.requests.size());
        for (std::size_t k = 0; k < s.requests.size(); ++k) {
            sol.assignment[k] = static_cast<int>(rng.index(s.nodes.size()));
            sol.bandwidth[k] = 1 + static_cast<int>(rng.index(10));
        }
        if (!check_feasibility(s, sol).empty())
            continue;
        for (int v = 0; v < s.node_count(); ++v) {
            double band = 0.0, demand = 0.0;
            for (std::size_t k = 0; k < s.requests.size(); ++k)
                if (sol.assignment[k] == v) {
                    band += sol.bandwidth[k];
                    demand += s.requests[k].demand_mhz;
                }
            CHECK(band <= s.nodes[v].bandwidth_mhz);
            CHECK(demand <= s.nodes[v].capacity_mhz);
        }
    }
}

TEST_CASE("evaluator matches the plain evaluation bit for bit") {
    const Scenario s = scengen::generate({});
    const DelayEvaluator eval(s);
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Solution sol;
        sol.assignment.resize(s.requests.size());
        sol.bandwidth.resize(s.requests.size());
        for (std::size_t k = 0; k < s.requests.size(); ++k) {
            sol.assignment[k] = static_cast<int>(rng.index(s.nodes.size()));
            sol.bandwidth[k] = 1 + static_cast<int>(rng.index(50));
        }
        const DelayReport a = evaluate(s, sol);
        const DelayReport b = eval.evaluate(sol);
        CHECK(a.sum_total_s == b.sum_total_s);
        CHECK(a.max_total_s == b.max_total_s);
        CHECK(eval.objective(sol, ObjectiveKind::kTotal) == a.sum_total_s);
        CHECK(eval.objective(sol, ObjectiveKind::kMakespan) == a.max_total_s);
    }
}

TEST_CASE("scenario json round trip is lossless") {
    const Scenario s = scengen::generate({});
    const std::string text = scenario_to_json(s);
    const Scenario back = scenario_from_json(text);
    CHECK(scenario_to_json(back) == text);
    CHECK(back.seed == s.seed);
    CHECK(back.nodes.size() == s.nodes.size());
    REQUIRE(back.requests.size() == s.requests.size());
    for (std::size_t k = 0; k < s.requests.size(); ++k) {
        CHECK(back.requests[k].size_mbit == s.requests[k].size_mbit);
        CHECK(back.requests[k].demand_mhz == s.requests[k].demand_mhz);
        CHECK(back.requests[k].distances_m == s.requests[k].distances_m);
    }
}

TEST_CASE("solution json round trip") {
    const Scenario s = scengen::generate({});
    Solution sol;
    sol.assignment.assign(s.requests.size(), 0);
    sol.bandwidth.assign(s.requests.size(), 5);
    sol.assignment[3] = 1;
    const Solution back = solution_from_json(solution_to_json(sol), s);
    CHECK(back == sol);
}

TEST_CASE("malformed scenario json is rejected") {
    CHECK_THROWS_AS(scenario_from_json("{"), ConfigError);
    CHECK_THROWS_AS(scenario_from_json("{}"), ConfigError);
    Scenario s = scengen::generate({});
    s.requests[0].distances_m.pop_back();
    CHECK_THROWS_AS(scenario_from_json(scenario_to_json(s)), ConfigError);
}
