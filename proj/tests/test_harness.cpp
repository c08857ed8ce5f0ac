#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgesched/cli.hpp"
#include "edgesched/config.hpp"
#include "edgesched/errors.hpp"
#include "edgesched/harness.hpp"
#include "edgesched/json_io.hpp"
#include "edgesched/scengen.hpp"

using namespace edgesched;
namespace fs = std::filesystem;

namespace {

std::vector<Scenario> bench_corpus(int count, std::uint64_t seed) {
    scengen::GenConfig config;
    config.seed = seed;
    return scengen::generate_corpus(config, count);
}

std::vector<Scenario> tiny_corpus(int count, std::uint64_t seed) {
    scengen::GenConfig config;
    config.node_count = 2;
    config.request_count = 3;
    config.bandwidth_mhz = 4.0;
    config.capacity_mhz = 1000.0;
    config.seed = seed;
    return scengen::generate_corpus(config, count);
}

// Strip the wall-time fields (row column 4, summary column 3) so two runs of
// the same bench can be compared byte for byte.
std::string mask_wall_columns(const fs::path& csv) {
    std::ifstream in(csv);
    REQUIRE(in);
    std::string line, out;
    bool summary = false;
    while (std::getline(in, line)) {
        if (line.empty())
            summary = true;
        std::ostringstream masked;
        std::istringstream fields(line);
        std::string field;
        int index = 0;
        while (std::getline(fields, field, ',')) {
            if ((!summary && index == 4) || (summary && index == 3))
                field = "<wall>";
            masked << (index ? "," : "") << field;
            ++index;
        }
        out += masked.str() + "\n";
    }
    return out;
}

int run_cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"edgesched"};
    argv.insert(argv.end(), args);
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config parser") {
    const Config cfg = Config::parse("# comment\n"
                                     "[gen]\n"
                                     "nodes = 2\n"
                                     "seed=7  ; trailing comment\n"
                                     "\n"
                                     "[bench]\n"
                                     "settings = a b  c\n");
    CHECK(cfg.get_int("gen", "nodes", 0) == 2);
    CHECK(cfg.get_int("gen", "seed", 0) == 7);
    CHECK(cfg.get_list("bench", "settings") == std::vector<std::string>{"a", "b", "c"});
    CHECK(cfg.get_or("gen", "missing", "x") == "x");
    CHECK(cfg.get_double("gen", "absent", 1.5) == 1.5);
    CHECK_THROWS_AS(cfg.get("gen", "missing"), ConfigError);
    CHECK_THROWS_AS(Config::parse("[unterminated\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("keyless\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("[gen]\nnodes = two\n").get_int("gen", "nodes", 0),
                    ConfigError);
}

TEST_CASE("a single setting wins every scenario") {
    const auto corpus = bench_corpus(5, 100);
    harness::BenchSetting only{"ga", harness::SolverId::kGa, 300, 1};
    const auto report = harness::run_bench(corpus, {only}, ObjectiveKind::kTotal);
    REQUIRE(report.summary.size() == 1);
    CHECK(report.summary[0].wins == 5);
    CHECK(report.summary[0].failures == 0);
}

TEST_CASE("the exact setting dominates heuristics everywhere") {
    const auto corpus = tiny_corpus(6, 500);
    const std::vector<harness::BenchSetting> settings = {
        {"exact", harness::SolverId::kExact, 0, 0},
        {"ga", harness::SolverId::kGa, 400, 3},
        {"evo", harness::SolverId::kEvo, 400, 3},
    };
    const auto report = harness::run_bench(corpus, settings, ObjectiveKind::kTotal);
    for (int s = 0; s < report.scenario_count; ++s)
        for (int i = 1; i < 3; ++i)
            CHECK(report.cell(s, 0).total_s <=
                  report.cell(s, i).total_s + harness::kWinTieTolerance);
    CHECK(report.summary[0].wins == report.scenario_count);
    int total_wins = 0;
    for (const auto& sum : report.summary)
        total_wins += sum.wins;
    CHECK(total_wins >= report.scenario_count);
}

TEST_CASE("bench rejects bad inputs") {
    const auto corpus = bench_corpus(2, 1);
    CHECK_THROWS_AS(harness::run_bench({}, {{"x", harness::SolverId::kGa, 100, 0}},
                                       ObjectiveKind::kTotal),
                    ConfigError);
    CHECK_THROWS_AS(harness::run_bench(corpus, {}, ObjectiveKind::kTotal), ConfigError);
    CHECK_THROWS_AS(harness::run_bench(corpus,
                                       {{"a", harness::SolverId::kGa, 100, 0},
                                        {"a", harness::SolverId::kEvo, 100, 0}},
                                       ObjectiveKind::kTotal),
                    ConfigError);
    CHECK_THROWS_AS(harness::run_bench(corpus, {{"s", harness::SolverId::kSurrogate, 0, 0}},
                                       ObjectiveKind::kTotal),
                    ConfigError);
}

TEST_CASE("csv round trips exactly and rejects empty reports") {
    TempDir dir("edgesched_csv_test");
    const auto corpus = bench_corpus(3, 42);
    const std::vector<harness::BenchSetting> settings = {
        {"ga", harness::SolverId::kGa, 200, 1},
        {"evo", harness::SolverId::kEvo, 200, 1},
    };
    const auto report = harness::run_bench(corpus, settings, ObjectiveKind::kTotal);
    const fs::path csv = dir.path / "bench.csv";
    harness::write_csv(report, csv);

    const harness::BenchReport parsed = harness::read_csv(csv);
    const fs::path csv2 = dir.path / "bench2.csv";
    harness::write_csv(parsed, csv2);

    std::ifstream a(csv), b(csv2);
    const std::string text_a{std::istreambuf_iterator<char>(a), {}};
    const std::string text_b{std::istreambuf_iterator<char>(b), {}};
    CHECK(text_a == text_b);

    CHECK_THROWS_AS(harness::write_csv(harness::BenchReport{}, dir.path / "empty.csv"),
                    ConfigError);
    CHECK(!fs::exists(dir.path / "empty.csv"));
}

TEST_CASE("identical configs give identical CSVs modulo wall time") {
    TempDir dir("edgesched_det_test");
    const auto corpus = bench_corpus(4, 9);
    const std::vector<harness::BenchSetting> settings = {
        {"ga", harness::SolverId::kGa, 300, 5},
        {"evo", harness::SolverId::kEvo, 300, 5},
    };
    const fs::path csv_a = dir.path / "a.csv";
    const fs::path csv_b = dir.path / "b.csv";
    harness::write_csv(harness::run_bench(corpus, settings, ObjectiveKind::kTotal), csv_a);
    harness::write_csv(harness::run_bench(corpus, settings, ObjectiveKind::kTotal), csv_b);
    CHECK(mask_wall_columns(csv_a) == mask_wall_columns(csv_b));

    // A parallel run lands on the same results.
    harness::RunOptions options;
    options.jobs = 4;
    const fs::path csv_c = dir.path / "c.csv";
    harness::write_csv(harness::run_bench(corpus, settings, ObjectiveKind::kTotal, options),
                       csv_c);
    CHECK(mask_wall_columns(csv_a) == mask_wall_columns(csv_c));
}

TEST_CASE("svg charts carry one bar per setting") {
    TempDir dir("edgesched_svg_test");
    const auto corpus = bench_corpus(2, 3);
    const std::vector<harness::BenchSetting> settings = {
        {"ga", harness::SolverId::kGa, 150, 1},
        {"evo", harness::SolverId::kEvo, 150, 1},
    };
    const auto report = harness::run_bench(corpus, settings, ObjectiveKind::kTotal);
    harness::render_svg(report, dir.path);
    for (const char* name : {"delay.svg", "time.svg", "wins.svg"}) {
        std::ifstream in(dir.path / name);
        REQUIRE(in);
        const std::string text{std::istreambuf_iterator<char>(in), {}};
        std::size_t bars = 0, pos = 0;
        while ((pos = text.find("class=\"bar\"", pos)) != std::string::npos) {
            ++bars;
            pos += 1;
        }
        CHECK(bars == settings.size());
    }
    // Byte-stable re-render.
    TempDir dir2("edgesched_svg_test2");
    harness::render_svg(report, dir2.path);
    for (const char* name : {"delay.svg", "time.svg", "wins.svg"}) {
        std::ifstream a(dir.path / name), b(dir2.path / name);
        const std::string text_a{std::istreambuf_iterator<char>(a), {}};
        const std::string text_b{std::istreambuf_iterator<char>(b), {}};
        CHECK(text_a == text_b);
    }
}

TEST_CASE("cli gen writes the requested corpus") {
    TempDir dir("edgesched_cli_gen");
    const std::string out = (dir.path / "corpus").string();
    CHECK(run_cli({"gen", "--seed", "42", "--count", "7", "--out", out.c_str()}) == 0);
    int files = 0;
    for (const auto& entry : fs::directory_iterator(out))
        files += entry.path().extension() == ".json";
    CHECK(files == 7);
    const Scenario s = load_scenario(fs::path(out) / "scenario_00000.json");
    CHECK(s.seed == 42);
}

TEST_CASE("cli solve reports and writes solutions") {
    TempDir dir("edgesched_cli_solve");
    scengen::GenConfig config;
    config.seed = 77;
    const Scenario s = scengen::generate(config);
    const fs::path scenario_path = dir.path / "s.json";
    save_scenario(s, scenario_path);

    const std::string sol_path = (dir.path / "sol.json").string();
    CHECK(run_cli({"solve", "--scenario", scenario_path.c_str(), "--solver", "evo", "--budget",
                   "200", "--seed", "1", "--out", sol_path.c_str()}) == 0);
    const Solution sol = load_solution(sol_path, s);
    CHECK(check_feasibility(s, sol).empty());
}

TEST_CASE("cli solve exits 2 on infeasible instances") {
    TempDir dir("edgesched_cli_infeasible");
    Scenario s;
    s.nodes = {{0, 10.0, 50.0}};
    for (int k = 0; k < 2; ++k) {
        Request r;
        r.id = k;
        r.size_mbit = 10.0;
        r.demand_mhz = 40.0; // 80 total against capacity 50: no assignment fits
        r.distances_m = {100.0};
        s.requests.push_back(r);
    }
    const fs::path scenario_path = dir.path / "bad.json";
    save_scenario(s, scenario_path);
    CHECK(run_cli({"solve", "--scenario", scenario_path.c_str(), "--solver", "exact"}) == 2);
    CHECK(run_cli({"solve", "--scenario", scenario_path.c_str(), "--solver", "ga", "--budget",
                   "300"}) == 2);
}

TEST_CASE("cli rejects unknown flags and solvers") {
    CHECK(run_cli({"solve", "--nonsense"}) == 1);
    CHECK(run_cli({"frobnicate"}) == 1);
    TempDir dir("edgesched_cli_badsolver");
    scengen::GenConfig config;
    const fs::path scenario_path = dir.path / "s.json";
    save_scenario(scengen::generate(config), scenario_path);
    CHECK(run_cli({"solve", "--scenario", scenario_path.c_str(), "--solver", "annealer"}) == 2);
}

TEST_CASE("cli bench end to end with config file") {
    TempDir dir("edgesched_cli_bench");
    const fs::path cfg_path = dir.path / "bench.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "[gen]\nnodes = 2\nrequests = 3\nbandwidth_mhz = 4\ncapacity_mhz = 1000\n"
            << "seed = 5\ncount = 3\n"
            << "[bench]\nsettings = ga400 evo400\nseed = 2\nobjective = total\n"
            << "[ga400]\nsolver = ga\nbudget = 400\n"
            << "[evo400]\nsolver = evo\nbudget = 400\n";
    }
    const std::string out = (dir.path / "report").string();
    CHECK(run_cli({"--config", cfg_path.string().c_str(), "bench", "--out", out.c_str()}) == 0);
    CHECK(fs::exists(fs::path(out) / "bench.csv"));
    CHECK(fs::exists(fs::path(out) / "delay.svg"));
    CHECK(fs::exists(fs::path(out) / "time.svg"));
    CHECK(fs::exists(fs::path(out) / "wins.svg"));

    // plot re-renders the same charts from the CSV alone.
    const std::string plots = (dir.path / "plots").string();
    CHECK(run_cli({"plot", "--csv", (fs::path(out) / "bench.csv").string().c_str(), "--out",
                   plots.c_str()}) == 0);
    std::ifstream a(fs::path(out) / "wins.svg"), b(fs::path(plots) / "wins.svg");
    const std::string text_a{std::istreambuf_iterator<char>(a), {}};
    const std::string text_b{std::istreambuf_iterator<char>(b), {}};
    CHECK(text_a == text_b);
}
