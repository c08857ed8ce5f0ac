#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgesched/evo.hpp"
#include "edgesched/ga.hpp"
#include "edgesched/problem.hpp"
#include "edgesched/surrogate.hpp"

namespace edgesched::harness {

enum class SolverId { kGa, kEvo, kSurrogate, kExact };

const char* solver_name(SolverId id);
SolverId solver_from_name(const std::string& name);

/// One column of the comparison. The per-scenario run seed is
/// seed + scenario index, so identical configs replay identically.
struct BenchSetting {
    std::string name;
    SolverId solver = SolverId::kGa;
    std::int64_t budget = 5000; // objective evaluations; ignored by surrogate/exact
    std::uint64_t seed = 0;
};

struct BenchCell {
    double total_s = 0.0;
    double makespan_s = 0.0;
    double wall_s = 0.0;
    std::int64_t evaluations = 0;
    bool solved = false; // false: the solver raised (e.g. an infeasible decode)
};

struct SettingSummary {
    std::string name;
    double mean_total_s = 0.0;
    double stddev_total_s = 0.0; // population stddev over solved scenarios
    double mean_wall_s = 0.0;
    int wins = 0;
    int failures = 0;
};

struct BenchReport {
    ObjectiveKind kind = ObjectiveKind::kTotal;
    std::vector<std::string> settings;
    int scenario_count = 0;
    std::vector<BenchCell> cells; // scenario-major: cells[s * settings.size() + i]
    std::vector<SettingSummary> summary;

    const BenchCell& cell(int scenario, int setting) const {
        return cells[static_cast<std::size_t>(scenario) * settings.size() + setting];
    }
};

struct RunOptions {
    int jobs = 1;
    const surrogate::SurrogateModel* model = nullptr; // needed for surrogate settings
    ga::GaParams ga_base;                             // budget/seed overridden per cell
    evo::EvoParams evo_base;
};

// Ties within 1e-9 s of the scenario minimum all count as wins. Every
// recorded solution is re-checked against check_feasibility; a violation is
// a hard failure of the whole run.
BenchReport run_bench(const std::vector<Scenario>& corpus,
                      const std::vector<BenchSetting>& settings, ObjectiveKind kind,
                      const RunOptions& options = {});

inline constexpr double kWinTieTolerance = 1e-9;

// One row per (scenario, setting) plus a summary block. Numbers carry 12
// significant digits, which round-trips through read_csv byte-stably.
void write_csv(const BenchReport& report, const std::filesystem::path& path);
BenchReport read_csv(const std::filesystem::path& path);

// Three bar charts (mean delay, mean wall time, wins) as delay.svg,
// time.svg and wins.svg under out_dir. Byte-stable for identical reports.
void render_svg(const BenchReport& report, const std::filesystem::path& out_dir);

// Best evo solution per scenario (run seed = seed + index), the labelling
// stage of the surrogate pipeline. Deterministic for any jobs value.
std::vector<Solution> evo_labels(const std::vector<Scenario>& corpus, std::int64_t budget,
                                 std::uint64_t seed, int jobs = 1,
                                 const evo::EvoParams& base = {});

} // namespace edgesched::harness
