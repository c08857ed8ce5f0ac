#include "edgesched/scengen.hpp"

#include "edgesched/errors.hpp"
#include "edgesched/rng.hpp"

namespace edgesched::scengen {

static void validate(const GenConfig& c) {
    if (c.node_count < 1 || c.request_count < 1)
        throw ConfigError("generator needs at least one node and one request");
    if (!(c.bandwidth_mhz > 0.0) || !(c.capacity_mhz > 0.0))
        throw ConfigError("node capacities must be positive");
    const auto ordered = [](const std::pair<double, double>& r) {
        return r.first <= r.second && r.first > 0.0;
    };
    if (!ordered(c.demand_range) || !ordered(c.distance_range) || !ordered(c.size_range))
        throw ConfigError("generator ranges must satisfy 0 < low <= high");
    if (c.distance_range.first < 1.0)
        throw ConfigError("distances below 1 m break the path-loss model");
}

Scenario generate(const GenConfig& config) {
    validate(config);
    Rng rng(config.seed);

    Scenario s;
    s.seed = config.seed;
    for (int v = 0; v < config.node_count; ++v)
        s.nodes.push_back({v, config.bandwidth_mhz, config.capacity_mhz});
    for (int k = 0; k < config.request_count; ++k) {
        Request req;
        req.id = k;
        req.size_mbit = rng.uniform(config.size_range.first, config.size_range.second);
        req.demand_mhz = rng.uniform(config.demand_range.first, config.demand_range.second);
        req.distances_m.reserve(config.node_count);
        for (int v = 0; v < config.node_count; ++v)
            req.distances_m.push_back(
                rng.uniform(config.distance_range.first, config.distance_range.second));
        s.requests.push_back(std::move(req));
    }
    return s;
}

std::vector<Scenario> generate_corpus(const GenConfig& config, int count) {
    if (count < 0)
        throw ConfigError("corpus count must be non-negative");
    std::vector<Scenario> corpus;
    corpus.reserve(count);
    for (int i = 0; i < count; ++i) {
        GenConfig c = config;
        c.seed = config.seed + static_cast<std::uint64_t>(i);
        corpus.push_back(generate(c));
    }
    return corpus;
}

} // namespace edgesched::scengen
