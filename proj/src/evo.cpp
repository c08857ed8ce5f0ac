#include "edgesched/evo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "edgesched/errors.hpp"
#include "edgesched/ga.hpp"

namespace edgesched::evo {

PenaltySpec PenaltySpec::for_scenario(const Scenario& scenario) {
    PenaltySpec spec;
    const int v = scenario.node_count();
    spec.equality_indices.resize(v);
    spec.inequality_indices.resize(v);
    for (int i = 0; i < v; ++i) {
        spec.equality_indices[i] = i;
        spec.inequality_indices[i] = v + i;
    }
    return spec;
}

std::vector<double> internal_constraints(const Scenario& scenario, const Solution& solution) {
    if (!shape_feasible(scenario, solution))
        throw std::invalid_argument("internal_constraints: solution shape mismatch");
    const int vcount = scenario.node_count();
    std::vector<double> g(2 * vcount, 0.0);
    std::vector<int> assigned(vcount, 0);
    for (int k = 0; k < scenario.request_count(); ++k) {
        const int v = solution.assignment[k];
        g[v] += solution.bandwidth[k];
        g[vcount + v] -= scenario.requests[k].demand_mhz;
        ++assigned[v];
    }
    for (int v = 0; v < vcount; ++v) {
        // Equality: allocated bandwidth must use the node's full B_v. A node
        // with nothing assigned has nothing to allocate; its entry stays 0.
        g[v] = assigned[v] > 0 ? g[v] - scenario.nodes[v].bandwidth_mhz : 0.0;
        g[vcount + v] += scenario.nodes[v].capacity_mhz; // C_v - sum(c), want >= 0
    }
    return g;
}

double penalized_fitness(const Scenario& scenario, const Solution& solution,
                         const PenaltySpec& spec, ObjectiveKind kind) {
    const std::vector<double> g = internal_constraints(scenario, solution);
    double violation = 0.0;
    for (int i : spec.equality_indices)
        violation += std::abs(g[i]);
    for (int i : spec.inequality_indices)
        violation += std::max(0.0, -g[i]);
    return objective(evaluate(scenario, solution), kind) + spec.weight_s_per_unit * violation;
}

Archive::Archive(int capacity) : capacity_(capacity) {
    if (capacity < 2)
        throw ConfigError("archive capacity must be at least 2");
    entries_.reserve(capacity);
}

bool Archive::insert(Solution solution, double fitness) {
    if (static_cast<int>(entries_.size()) == capacity_ && fitness >= entries_.back().fitness)
        return false;
    const auto pos = std::upper_bound(
        entries_.begin(), entries_.end(), fitness,
        [](double f, const Entry& e) { return f < e.fitness; });
    entries_.insert(pos, Entry{std::move(solution), fitness});
    if (static_cast<int>(entries_.size()) > capacity_)
        entries_.pop_back();
    return true;
}

bool Archive::sorted() const {
    return std::is_sorted(entries_.begin(), entries_.end(),
                          [](const Entry& a, const Entry& b) { return a.fitness < b.fitness; });
}

namespace {

// Rank-weighted pick: rank 0 (best) gets weight size, the worst gets 1.
int pick_rank(const Archive& archive, Rng& rng) {
    const int n = archive.size();
    const std::size_t total = static_cast<std::size_t>(n) * (n + 1) / 2;
    std::size_t ticket = rng.index(total);
    for (int rank = 0; rank < n; ++rank) {
        const std::size_t weight = static_cast<std::size_t>(n - rank);
        if (ticket < weight)
            return rank;
        ticket -= weight;
    }
    return n - 1;
}

} // namespace

SolverReport solve(const Scenario& scenario, const EvoParams& params, ObjectiveKind kind) {
    const auto t0 = std::chrono::steady_clock::now();
    if (params.budget < params.archive_capacity)
        throw ConfigError("evo budget must cover the archive seeding phase");

    Rng rng(params.seed);
    const DelayEvaluator eval(scenario);
    PenaltySpec spec = PenaltySpec::for_scenario(scenario);
    spec.weight_s_per_unit = params.penalty_weight;

    SolverReport report;
    report.solver = "evo";
    report.kind = kind;

    Solution best_feasible;
    double best_feasible_objective = std::numeric_limits<double>::infinity();
    double best_fitness = std::numeric_limits<double>::infinity();

    // Post-repair candidates satisfy the bandwidth equalities, so the
    // penalty reduces to the compute-capacity excess. Recomputing it from
    // check_feasibility keeps one code path for fitness and best-tracking.
    const auto assess = [&](const Solution& s) {
        const auto violations = check_feasibility(scenario, s);
        double fit = eval.objective(s, kind);
        for (const Violation& viol : violations)
            fit += spec.weight_s_per_unit * viol.excess;
        ++report.evaluations;
        best_fitness = std::min(best_fitness, fit);
        if (violations.empty() && fit < best_feasible_objective) {
            best_feasible_objective = fit;
            best_feasible = s;
        }
        return fit;
    };

    Archive archive(params.archive_capacity);
    for (int i = 0; i < params.archive_capacity; ++i) {
        Solution s = ga::random_repaired_solution(scenario, rng);
        const double fit = assess(s);
        archive.insert(std::move(s), fit);
    }
    report.curve.push_back({report.evaluations, best_fitness});

    const int kcount = scenario.request_count();
    const int vcount = scenario.node_count();
    ga::Chromosome scratch;
    while (report.evaluations < params.budget) {
        const double progress =
            static_cast<double>(report.evaluations) / static_cast<double>(params.budget);
        scratch.genes = archive.solution_at(pick_rank(archive, rng));
        scratch.fitness.reset();

        // Integer step on one bandwidth gene, magnitude annealed B_v/4 -> 1.
        const int k = static_cast<int>(rng.index(kcount));
        const double b_v = scenario.nodes[scratch.genes.assignment[k]].bandwidth_mhz;
        const int max_step =
            std::max(1, static_cast<int>(std::lround((b_v / 4.0) * (1.0 - progress))));
        const int step = rng.uniform_int(1, max_step) * (rng.coin(0.5) ? 1 : -1);
        scratch.genes.bandwidth[k] = std::max(1, scratch.genes.bandwidth[k] + step);

        // Occasionally move one request to another node (when it has room).
        if (vcount > 1 && rng.coin(params.flip_prob)) {
            const int j = static_cast<int>(rng.index(kcount));
            int target = static_cast<int>(rng.index(vcount - 1));
            if (target >= scratch.genes.assignment[j])
                ++target;
            int target_load = 0;
            for (int node : scratch.genes.assignment)
                if (node == target)
                    ++target_load;
            if (static_cast<double>(target_load + 1) <= scenario.nodes[target].bandwidth_mhz)
                scratch.genes.assignment[j] = target;
        }

        ga::repair_bandwidth(scratch, scenario, rng);
        const double before = best_fitness;
        const double fit = assess(scratch.genes);
        archive.insert(scratch.genes, fit);
        if (best_fitness < before)
            report.curve.push_back({report.evaluations, best_fitness});
    }
    if (report.curve.back().evaluations != report.evaluations)
        report.curve.push_back({report.evaluations, best_fitness});

    if (!std::isfinite(best_feasible_objective))
        throw InfeasibleInstanceError("evo: no feasible candidate found within budget");

    report.best = best_feasible;
    report.delays = evaluate(scenario, report.best);
    report.objective_s = objective(report.delays, kind);
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace edgesched::evo
