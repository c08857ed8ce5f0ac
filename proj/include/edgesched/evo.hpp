#pragma once

#include <cstdint>
#include <vector>

#include "edgesched/problem.hpp"
#include "edgesched/solver_report.hpp"

namespace edgesched::evo {

/// Constraint layout for the penalty transform: one equality per node
/// (bandwidth sum must hit B_v exactly) followed by one inequality per node
/// (spare compute capacity must stay >= 0).
struct PenaltySpec {
    std::vector<int> equality_indices;   // positions 0 .. V-1 of the G vector
    std::vector<int> inequality_indices; // positions V .. 2V-1
    double weight_s_per_unit = 10.0;     // seconds charged per unit violation

    static PenaltySpec for_scenario(const Scenario& scenario);
};

struct EvoParams {
    std::int64_t budget = 5000; // objective evaluations, including the seeding phase
    std::uint64_t seed = 0;
    int archive_capacity = 20;
    double penalty_weight = 10.0;
    double flip_prob = 0.2; // chance a candidate also moves one request
};

// G vector: per node v, G[v] = (sum of assigned b) - B_v (equality, want 0)
// and G[V+v] = C_v - (sum of assigned c) (inequality, want >= 0).
std::vector<double> internal_constraints(const Scenario& scenario, const Solution& solution);

// objective + weight * (sum |equality G| + sum max(0, -inequality G)).
// Equals the raw objective exactly on feasible solutions.
double penalized_fitness(const Scenario& scenario, const Solution& solution,
                         const PenaltySpec& spec, ObjectiveKind kind = ObjectiveKind::kTotal);

/// Fixed-capacity pool of the best candidates seen, kept sorted by
/// ascending penalized fitness.
class Archive {
public:
    explicit Archive(int capacity);

    // Inserts when the archive has room or the fitness beats the current
    // worst; keeps the pool sorted either way.
    bool insert(Solution solution, double fitness);

    int size() const { return static_cast<int>(entries_.size()); }
    int capacity() const { return capacity_; }
    const Solution& solution_at(int rank) const { return entries_[rank].solution; }
    double fitness_at(int rank) const { return entries_[rank].fitness; }
    bool sorted() const;

private:
    struct Entry {
        Solution solution;
        double fitness;
    };
    int capacity_;
    std::vector<Entry> entries_;
};

// Archive-based stochastic search under the penalty transform: candidates
// are integer perturbations of rank-weighted archive samples, repaired to
// full bandwidth use before evaluation. Step size anneals from B_v/4 down
// to 1 over the budget. The returned best always passes check_feasibility.
SolverReport solve(const Scenario& scenario, const EvoParams& params,
                   ObjectiveKind kind = ObjectiveKind::kTotal);

} // namespace edgesched::evo
