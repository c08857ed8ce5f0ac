#include "edgesched/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "edgesched/errors.hpp"
#include "edgesched/evo.hpp"

namespace edgesched::ga {

namespace {

std::vector<std::vector<int>> genes_by_node(const Solution& genes, int node_count) {
    std::vector<std::vector<int>> groups(node_count);
    for (std::size_t k = 0; k < genes.assignment.size(); ++k)
        groups[genes.assignment[k]].push_back(static_cast<int>(k));
    return groups;
}

} // namespace

Solution random_repaired_solution(const Scenario& scenario, Rng& rng) {
    const int kcount = scenario.request_count();
    const int vcount = scenario.node_count();

    Solution sol;
    sol.assignment.resize(kcount);
    sol.bandwidth.assign(kcount, 1);

    // Draw assignments until no node holds more requests than MHz.
    constexpr int kMaxDraws = 10000;
    std::vector<int> load(vcount);
    for (int attempt = 0;; ++attempt) {
        std::fill(load.begin(), load.end(), 0);
        for (int k = 0; k < kcount; ++k) {
            sol.assignment[k] = static_cast<int>(rng.index(vcount));
            ++load[sol.assignment[k]];
        }
        bool ok = true;
        for (int v = 0; v < vcount; ++v)
            if (static_cast<double>(load[v]) > scenario.nodes[v].bandwidth_mhz)
                ok = false;
        if (ok)
            break;
        if (attempt + 1 == kMaxDraws)
            throw RepairInfeasibleError(
                "could not draw an assignment with <= B_v requests per node");
    }

    // Random composition of each node's bandwidth: everyone starts at 1 MHz,
    // the leftover units land on uniformly chosen requests of that node.
    const auto groups = genes_by_node(sol, vcount);
    for (int v = 0; v < vcount; ++v) {
        if (groups[v].empty())
            continue;
        const int budget = static_cast<int>(scenario.nodes[v].bandwidth_mhz);
        for (int unit = static_cast<int>(groups[v].size()); unit < budget; ++unit)
            ++sol.bandwidth[groups[v][rng.index(groups[v].size())]];
    }
    return sol;
}

std::vector<Chromosome> init_population(const Scenario& scenario, const GaParams& params,
                                        Rng& rng) {
    if (params.population_size < 2)
        throw ConfigError("population size must be at least 2");
    std::vector<Chromosome> population;
    population.reserve(params.population_size);
    for (int i = 0; i < params.population_size; ++i)
        population.push_back({random_repaired_solution(scenario, rng), std::nullopt});
    return population;
}

Chromosome crossover(const Chromosome& father, const Chromosome& mother, int splice) {
    const int n = father.gene_count();
    if (n != mother.gene_count())
        throw std::invalid_argument("crossover: parents disagree on gene count");
    if (n > 1 && (splice < 1 || splice > n - 1))
        throw std::invalid_argument("crossover: splice point out of [1, n-1]");

    Chromosome child;
    const int cut = n == 1 ? 1 : splice;
    child.genes.assignment.assign(father.genes.assignment.begin(),
                                  father.genes.assignment.begin() + cut);
    child.genes.assignment.insert(child.genes.assignment.end(),
                                  mother.genes.assignment.begin() + cut,
                                  mother.genes.assignment.end());
    child.genes.bandwidth.assign(father.genes.bandwidth.begin(),
                                 father.genes.bandwidth.begin() + cut);
    child.genes.bandwidth.insert(child.genes.bandwidth.end(),
                                 mother.genes.bandwidth.begin() + cut,
                                 mother.genes.bandwidth.end());
    return child;
}

void repair_bandwidth(Chromosome& child, const Scenario& scenario, Rng& rng) {
    const auto groups = genes_by_node(child.genes, scenario.node_count());
    bool changed = false;
    for (int v = 0; v < scenario.node_count(); ++v) {
        const auto& ids = groups[v];
        if (ids.empty())
            continue; // nothing to allocate; Eq-style equality is vacuous here
        const int budget = static_cast<int>(scenario.nodes[v].bandwidth_mhz);
        if (static_cast<int>(ids.size()) > budget)
            throw RepairInfeasibleError("node " + std::to_string(v) + " holds " +
                                        std::to_string(ids.size()) + " requests but only " +
                                        std::to_string(budget) + " MHz");
        int delta = 0;
        for (int id : ids)
            delta += child.genes.bandwidth[id];
        delta -= budget;
        changed = changed || delta != 0;
        while (delta > 0) {
            int& b = child.genes.bandwidth[ids[rng.index(ids.size())]];
            if (b > 1) { // never push a gene below 1 MHz
                --b;
                --delta;
            }
        }
        while (delta < 0) {
            ++child.genes.bandwidth[ids[rng.index(ids.size())]];
            ++delta;
        }
    }
    if (changed)
        child.fitness.reset();
}

void mutate_bandwidth(Chromosome& child, double mu, const Scenario& scenario,
                      double balance_below, double rotate_above) {
    if (mu > balance_below && mu < rotate_above)
        return;
    const auto groups = genes_by_node(child.genes, scenario.node_count());
    auto& b = child.genes.bandwidth;
    if (mu >= rotate_above) {
        // Left-rotate each node group's values one slot (request-id order).
        for (const auto& ids : groups) {
            if (ids.size() < 2)
                continue;
            const int first = b[ids.front()];
            for (std::size_t i = 0; i + 1 < ids.size(); ++i)
                b[ids[i]] = b[ids[i + 1]];
            b[ids.back()] = first;
        }
    } else {
        // Balance: one unit from the group maximum to the group minimum,
        // ties resolved at the lowest request id. Node sums are unchanged.
        for (const auto& ids : groups) {
            if (ids.size() < 2)
                continue;
            int max_id = ids.front();
            int min_id = ids.front();
            for (int id : ids) {
                if (b[id] > b[max_id])
                    max_id = id;
                if (b[id] < b[min_id])
                    min_id = id;
            }
            if (max_id == min_id)
                continue; // all equal
            --b[max_id];
            ++b[min_id];
        }
    }
    child.fitness.reset();
}

void mutate_assignment(Chromosome& child, const Scenario& scenario, double flip_prob, Rng& rng) {
    const int vcount = scenario.node_count();
    if (vcount < 2 || !rng.coin(flip_prob))
        return;
    const int k = static_cast<int>(rng.index(child.gene_count()));
    const int old_node = child.genes.assignment[k];
    int target = static_cast<int>(rng.index(vcount - 1));
    if (target >= old_node)
        ++target;

    // Only move onto nodes with a spare 1-MHz unit, so repair stays possible.
    int target_load = 0;
    for (int node : child.genes.assignment)
        if (node == target)
            ++target_load;
    if (static_cast<double>(target_load + 1) > scenario.nodes[target].bandwidth_mhz)
        return;

    child.genes.assignment[k] = target;
    repair_bandwidth(child, scenario, rng);
}

void mutate(Chromosome& child, double mu, const Scenario& scenario, const GaParams& params,
            Rng& rng) {
    mutate_bandwidth(child, mu, scenario, params.balance_below, params.rotate_above);
    mutate_assignment(child, scenario, params.assignment_flip_prob, rng);
}

GaParams params_for_budget(std::int64_t evaluations, GaParams base) {
    base.generation_budget =
        static_cast<int>(std::max<std::int64_t>(0, evaluations / base.population_size - 1));
    return base;
}

SolverReport solve(const Scenario& scenario, const GaParams& params, ObjectiveKind kind) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(params.seed);
    const DelayEvaluator eval(scenario);
    const double penalty_weight = evo::PenaltySpec::for_scenario(scenario).weight_s_per_unit;

    SolverReport report;
    report.solver = "ga";
    report.kind = kind;

    Solution best_feasible;
    double best_feasible_objective = std::numeric_limits<double>::infinity();
    double best_fitness = std::numeric_limits<double>::infinity();

    // Ranking fitness: raw objective plus a dominating charge per MHz of
    // capacity violation, so compute-overloaded chromosomes sort last and
    // the returned best always satisfies the capacity constraints.
    const auto score = [&](Chromosome& c) {
        if (!c.fitness) {
            const auto violations = check_feasibility(scenario, c.genes);
            double fit = eval.objective(c.genes, kind);
            for (const Violation& viol : violations)
                fit += penalty_weight * viol.excess;
            c.fitness = fit;
            ++report.evaluations;
            best_fitness = std::min(best_fitness, fit);
            if (violations.empty() && fit < best_feasible_objective) {
                best_feasible_objective = fit; // feasible => fitness == objective
                best_feasible = c.genes;
            }
        }
        return *c.fitness;
    };

    std::vector<Chromosome> population = init_population(scenario, params, rng);
    for (Chromosome& c : population)
        score(c);
    report.curve.push_back({report.evaluations, best_fitness});

    const int n = scenario.request_count();
    for (int gen = 0; gen < params.generation_budget; ++gen) {
        std::vector<Chromosome> pool = population;
        pool.reserve(2 * population.size());
        for (int i = 0; i < params.population_size; ++i) {
            const Chromosome& father = population[rng.index(population.size())];
            const Chromosome& mother = population[rng.index(population.size())];
            const int splice = n > 1 ? 1 + static_cast<int>(rng.index(n - 1)) : 1;
            Chromosome child = crossover(father, mother, splice);
            try {
                repair_bandwidth(child, scenario, rng);
                mutate(child, rng.unit(), scenario, params, rng);
            } catch (const RepairInfeasibleError&) {
                // Crossover packed some node beyond its MHz; substitute a
                // fresh random individual to keep the generation full.
                child = {random_repaired_solution(scenario, rng), std::nullopt};
            }
            score(child);
            pool.push_back(std::move(child));
        }
        std::stable_sort(pool.begin(), pool.end(), [](const Chromosome& a, const Chromosome& b) {
            return *a.fitness < *b.fitness;
        });
        pool.resize(params.population_size);
        population = std::move(pool);
        report.curve.push_back({report.evaluations, best_fitness});
    }

    if (!std::isfinite(best_feasible_objective))
        throw InfeasibleInstanceError("ga: no feasible individual constructed within budget");

    report.best = best_feasible;
    report.delays = evaluate(scenario, report.best);
    report.objective_s = objective(report.delays, kind);
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace edgesched::ga
