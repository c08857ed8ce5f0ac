#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "edgesched/problem.hpp"

namespace edgesched::scengen {

/// Random-scenario distribution. Defaults give the benchmark workload:
/// 2 nodes at 100 MHz band / 1.5 GHz capacity, 20 requests with demand
/// U(50,150) MHz, distance U(30,200) m and size U(10,100) Mbit.
struct GenConfig {
    int node_count = 2;
    int request_count = 20;
    double bandwidth_mhz = 100.0;
    double capacity_mhz = 1500.0;
    std::pair<double, double> demand_range{50.0, 150.0};
    std::pair<double, double> distance_range{30.0, 200.0};
    std::pair<double, double> size_range{10.0, 100.0};
    std::uint64_t seed = 0;
};

// Deterministic in the config alone: same config (including seed) gives a
// byte-identical scenario on every platform. Per request, in id order, it
// draws size, then demand, then one distance per node.
Scenario generate(const GenConfig& config);

// count scenarios; element i is generate() with seed = config.seed + i.
std::vector<Scenario> generate_corpus(const GenConfig& config, int count);

} // namespace edgesched::scengen
