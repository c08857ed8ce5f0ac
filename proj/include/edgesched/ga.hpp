#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edgesched/problem.hpp"
#include "edgesched/rng.hpp"
#include "edgesched/solver_report.hpp"

namespace edgesched::ga {

/// One individual: per-request (node, bandwidth) genes plus a fitness cache.
/// Node and bandwidth genes always travel together through crossover.
struct Chromosome {
    Solution genes;
    std::optional<double> fitness; // penalized objective, seconds

    int gene_count() const { return static_cast<int>(genes.assignment.size()); }
};

struct GaParams {
    int population_size = 50;
    int generation_budget = 100;
    // Mutation thresholds on the uniform draw mu: balance at mu <= 0.3,
    // nothing on (0.3, 0.75), rotate at mu >= 0.75.
    double balance_below = 0.3;
    double rotate_above = 0.75;
    double assignment_flip_prob = 0.1;
    std::uint64_t seed = 0;
};

// A random shape-feasible solution: node uniform per request, bandwidth a
// random composition of each node's B_v over its assigned requests.
// Redraws assignments that leave some node with more requests than MHz.
Solution random_repaired_solution(const Scenario& scenario, Rng& rng);

std::vector<Chromosome> init_population(const Scenario& scenario, const GaParams& params,
                                        Rng& rng);

// Splice crossover: child = father[0..splice) ++ mother[splice..n).
// splice must lie in [1, n-1].
Chromosome crossover(const Chromosome& father, const Chromosome& mother, int splice);

// Walks each node's bandwidth sum back to exactly B_v in random +-1 steps on
// uniformly chosen genes of that node (never below 1 MHz). No-op when the
// sums already match, so repairing twice changes nothing. Throws
// RepairInfeasibleError when a node holds more requests than it has MHz.
void repair_bandwidth(Chromosome& child, const Scenario& scenario, Rng& rng);

// Bandwidth mutation branch for a given mu draw. Operates inside each
// node's gene group (in request-id order) so per-node sums are preserved:
// balance moves one unit from the group maximum to the group minimum (ties
// at the lowest request id), rotate shifts the group's values left one slot.
void mutate_bandwidth(Chromosome& child, double mu, const Scenario& scenario,
                      double balance_below = 0.3, double rotate_above = 0.75);

// Flips one random request to a random other node with the configured
// probability, then re-repairs bandwidth sums. Only flips to nodes with a
// spare 1-MHz unit so the repair cannot fail.
void mutate_assignment(Chromosome& child, const Scenario& scenario, double flip_prob, Rng& rng);

void mutate(Chromosome& child, double mu, const Scenario& scenario, const GaParams& params,
            Rng& rng);

// One generation = population_size evaluations (plus the initial
// population). Returns the parameters that make solve() spend
// `evaluations` objective evaluations in total.
GaParams params_for_budget(std::int64_t evaluations, GaParams base = {});

// Elitist generational GA over the combined chromosomes. Individuals are
// ranked by compute-penalized objective; the returned best is the best
// individual that passes check_feasibility. Throws InfeasibleInstanceError
// when no feasible individual was ever constructed.
SolverReport solve(const Scenario& scenario, const GaParams& params,
                   ObjectiveKind kind = ObjectiveKind::kTotal);

} // namespace edgesched::ga
