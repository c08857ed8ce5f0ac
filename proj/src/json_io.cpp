#include "edgesched/json_io.hpp"

#include <fstream>

#include <json.hpp>

#include "edgesched/errors.hpp"

namespace edgesched {

using nlohmann::json;

std::string scenario_to_json(const Scenario& scenario) {
    json nodes = json::array();
    for (const EdgeNode& n : scenario.nodes)
        nodes.push_back({{"id", n.id},
                         {"bandwidth_mhz", n.bandwidth_mhz},
                         {"capacity_mhz", n.capacity_mhz}});
    json requests = json::array();
    for (const Request& r : scenario.requests)
        requests.push_back({{"id", r.id},
                            {"size_mbit", r.size_mbit},
                            {"demand_mhz", r.demand_mhz},
                            {"distances_m", r.distances_m}});
    json doc = {{"version", kScenarioVersion},
                {"seed", scenario.seed},
                {"slot_count", scenario.slot_count},
                {"wireless",
                 {{"freq_ghz", scenario.wireless.carrier_freq_ghz},
                  {"tx_power_dbm", scenario.wireless.tx_power_dbm},
                  {"noise_mw_per_mhz", scenario.wireless.noise_mw_per_mhz}}},
                {"nodes", nodes},
                {"requests", requests}};
    return doc.dump(2) + "\n";
}

static void validate(const Scenario& s) {
    if (s.nodes.empty() || s.requests.empty())
        throw ConfigError("scenario needs at least one node and one request");
    if (!(s.wireless.carrier_freq_ghz > 0.0) || !(s.wireless.noise_mw_per_mhz > 0.0))
        throw ConfigError("scenario wireless constants must be positive");
    for (const EdgeNode& n : s.nodes)
        if (!(n.bandwidth_mhz > 0.0) || !(n.capacity_mhz > 0.0))
            throw ConfigError("node " + std::to_string(n.id) + ": capacities must be positive");
    for (const Request& r : s.requests) {
        if (!(r.size_mbit > 0.0) || !(r.demand_mhz > 0.0))
            throw ConfigError("request " + std::to_string(r.id) +
                              ": size and demand must be positive");
        if (r.distances_m.size() != s.nodes.size())
            throw ConfigError("request " + std::to_string(r.id) +
                              ": distance list does not match node count");
        for (double d : r.distances_m)
            if (!(d >= 1.0))
                throw ConfigError("request " + std::to_string(r.id) +
                                  ": distance below the 1 m model floor");
    }
}

Scenario scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario parse failed: ") + e.what());
    }
    Scenario s;
    try {
        s.seed = doc.at("seed").get<std::uint64_t>();
        s.slot_count = doc.value("slot_count", 1);
        const json& w = doc.at("wireless");
        s.wireless.carrier_freq_ghz = w.at("freq_ghz").get<double>();
        s.wireless.tx_power_dbm = w.at("tx_power_dbm").get<double>();
        s.wireless.noise_mw_per_mhz = w.at("noise_mw_per_mhz").get<double>();
        for (const json& n : doc.at("nodes"))
            s.nodes.push_back({n.at("id").get<int>(), n.at("bandwidth_mhz").get<double>(),
                               n.at("capacity_mhz").get<double>()});
        for (const json& r : doc.at("requests")) {
            Request req;
            req.id = r.at("id").get<int>();
            req.size_mbit = r.at("size_mbit").get<double>();
            req.demand_mhz = r.at("demand_mhz").get<double>();
            req.distances_m = r.at("distances_m").get<std::vector<double>>();
            s.requests.push_back(std::move(req));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario field missing or mistyped: ") + e.what());
    }
    validate(s);
    return s;
}

std::string solution_to_json(const Solution& solution) {
    json assignments = json::array();
    for (std::size_t k = 0; k < solution.assignment.size(); ++k)
        assignments.push_back({{"request", k},
                               {"node", solution.assignment[k]},
                               {"bandwidth_mhz", solution.bandwidth[k]}});
    return json{{"assignments", assignments}}.dump(2) + "\n";
}

Solution solution_from_json(const std::string& text, const Scenario& scenario) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("solution parse failed: ") + e.what());
    }
    Solution sol;
    sol.assignment.assign(scenario.requests.size(), -1);
    sol.bandwidth.assign(scenario.requests.size(), 0);
    try {
        for (const json& a : doc.at("assignments")) {
            const int k = a.at("request").get<int>();
            if (k < 0 || k >= scenario.request_count())
                throw ConfigError("solution references unknown request " + std::to_string(k));
            sol.assignment[k] = a.at("node").get<int>();
            sol.bandwidth[k] = a.at("bandwidth_mhz").get<int>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("solution field missing or mistyped: ") + e.what());
    }
    for (std::size_t k = 0; k < sol.assignment.size(); ++k)
        if (sol.assignment[k] < 0)
            throw ConfigError("solution misses request " + std::to_string(k));
    return sol;
}

static std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

static void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path.string());
    out << text;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    write_file(path, scenario_to_json(scenario));
}

Scenario load_scenario(const std::filesystem::path& path) {
    return scenario_from_json(read_file(path));
}

void save_solution(const Solution& solution, const std::filesystem::path& path) {
    write_file(path, solution_to_json(solution));
}

Solution load_solution(const std::filesystem::path& path, const Scenario& scenario) {
    return solution_from_json(read_file(path), scenario);
}

} // namespace edgesched
