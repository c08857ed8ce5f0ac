#pragma once

#include <filesystem>
#include <string>

#include "edgesched/problem.hpp"

namespace edgesched {

// Recorded in every scenario file so corpora stay reproducible across
// builds: schema revision, PRNG algorithm, corpus seed-derivation rule.
inline constexpr const char* kScenarioVersion = "edgesched-1;prng=mt19937_64;corpus-seed=base+index";

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

std::string solution_to_json(const Solution& solution);
Solution solution_from_json(const std::string& text, const Scenario& scenario);

void save_scenario(const Scenario& scenario, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

void save_solution(const Solution& solution, const std::filesystem::path& path);
Solution load_solution(const std::filesystem::path& path, const Scenario& scenario);

} // namespace edgesched
