#include "edgesched/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "edgesched/config.hpp"
#include "edgesched/errors.hpp"
#include "edgesched/exact.hpp"
#include "edgesched/harness.hpp"
#include "edgesched/json_io.hpp"
#include "edgesched/scengen.hpp"

namespace edgesched::cli {

namespace fs = std::filesystem;

namespace {

scengen::GenConfig gen_config_from(const Config& cfg) {
    scengen::GenConfig gen;
    gen.node_count = static_cast<int>(cfg.get_int("gen", "nodes", gen.node_count));
    gen.request_count = static_cast<int>(cfg.get_int("gen", "requests", gen.request_count));
    gen.bandwidth_mhz = cfg.get_double("gen", "bandwidth_mhz", gen.bandwidth_mhz);
    gen.capacity_mhz = cfg.get_double("gen", "capacity_mhz", gen.capacity_mhz);
    gen.demand_range = {cfg.get_double("gen", "demand_min", gen.demand_range.first),
                        cfg.get_double("gen", "demand_max", gen.demand_range.second)};
    gen.distance_range = {cfg.get_double("gen", "distance_min", gen.distance_range.first),
                          cfg.get_double("gen", "distance_max", gen.distance_range.second)};
    gen.size_range = {cfg.get_double("gen", "size_min", gen.size_range.first),
                      cfg.get_double("gen", "size_max", gen.size_range.second)};
    gen.seed = static_cast<std::uint64_t>(cfg.get_int("gen", "seed", 0));
    return gen;
}

ga::GaParams ga_base_from(const Config& cfg) {
    ga::GaParams params;
    params.population_size = static_cast<int>(cfg.get_int("ga", "population", 50));
    return params;
}

evo::EvoParams evo_base_from(const Config& cfg) {
    evo::EvoParams params;
    params.archive_capacity = static_cast<int>(cfg.get_int("evo", "archive", 20));
    params.penalty_weight = cfg.get_double("evo", "penalty_weight", 10.0);
    params.flip_prob = cfg.get_double("evo", "flip_prob", 0.2);
    return params;
}

surrogate::TrainConfig train_config_from(const Config& cfg) {
    surrogate::TrainConfig tc;
    tc.epochs = static_cast<int>(cfg.get_int("train", "epochs", tc.epochs));
    tc.learning_rate = cfg.get_double("train", "lr", tc.learning_rate);
    tc.batch_size = static_cast<int>(cfg.get_int("train", "batch", tc.batch_size));
    tc.validation_fraction = cfg.get_double("train", "validation_fraction",
                                            tc.validation_fraction);
    tc.seed = static_cast<std::uint64_t>(cfg.get_int("train", "seed", 0));
    tc.hidden = static_cast<int>(cfg.get_int("train", "hidden", tc.hidden));
    tc.share_weight = cfg.get_double("train", "share_weight", tc.share_weight);
    tc.dataset_size = static_cast<int>(cfg.get_int("train", "dataset", tc.dataset_size));
    return tc;
}

std::string scenario_filename(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "scenario_%05d.json", index);
    return buf;
}

std::vector<Scenario> load_corpus_dir(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("scenario_", 0) == 0 && name.find(".label.") == std::string::npos &&
            entry.path().extension() == ".json")
            files.push_back(entry.path());
    }
    if (files.empty())
        throw ConfigError("no scenario_*.json files under " + dir.string());
    std::sort(files.begin(), files.end());
    std::vector<Scenario> corpus;
    corpus.reserve(files.size());
    for (const fs::path& f : files)
        corpus.push_back(load_scenario(f));
    return corpus;
}

std::vector<harness::BenchSetting> settings_from(const Config& cfg) {
    const std::uint64_t default_seed =
        static_cast<std::uint64_t>(cfg.get_int("bench", "seed", 0));
    std::vector<harness::BenchSetting> settings;
    for (const std::string& name : cfg.get_list("bench", "settings")) {
        harness::BenchSetting s;
        s.name = name;
        s.solver = harness::solver_from_name(cfg.get(name, "solver"));
        s.budget = cfg.get_int(name, "budget", 5000);
        s.seed = static_cast<std::uint64_t>(
            cfg.get_int(name, "seed", static_cast<std::int64_t>(default_seed)));
        settings.push_back(std::move(s));
    }
    return settings;
}

struct CommonArgs {
    std::string config_path;
    Config config() const {
        return config_path.empty() ? Config{} : Config::load(config_path);
    }
};

int cmd_gen(const CommonArgs& common, std::int64_t seed, bool seed_set, int count,
            bool count_set, const std::string& out_dir) {
    const Config cfg = common.config();
    scengen::GenConfig gen = gen_config_from(cfg);
    if (seed_set)
        gen.seed = static_cast<std::uint64_t>(seed);
    const int n = count_set ? count : static_cast<int>(cfg.get_int("gen", "count", 100));

    fs::create_directories(out_dir);
    const std::vector<Scenario> corpus = scengen::generate_corpus(gen, n);
    for (int i = 0; i < n; ++i)
        save_scenario(corpus[i], fs::path(out_dir) / scenario_filename(i));
    std::cout << "wrote " << n << " scenarios to " << out_dir << "\n";
    return 0;
}

int cmd_solve(const CommonArgs& common, const std::string& scenario_path,
              const std::string& solver, std::int64_t budget, std::int64_t seed,
              const std::string& objective_name, const std::string& model_path,
              const std::string& out_path, const std::string& report_path) {
    const Config cfg = common.config();
    const Scenario scenario = load_scenario(scenario_path);
    const ObjectiveKind kind = objective_kind_from_name(objective_name);

    SolverReport report;
    switch (harness::solver_from_name(solver)) {
    case harness::SolverId::kGa: {
        ga::GaParams params = ga::params_for_budget(budget, ga_base_from(cfg));
        params.seed = static_cast<std::uint64_t>(seed);
        report = ga::solve(scenario, params, kind);
        break;
    }
    case harness::SolverId::kEvo: {
        evo::EvoParams params = evo_base_from(cfg);
        params.budget = budget;
        params.seed = static_cast<std::uint64_t>(seed);
        report = evo::solve(scenario, params, kind);
        break;
    }
    case harness::SolverId::kSurrogate: {
        if (model_path.empty())
            throw ConfigError("solve: the surrogate solver needs --model");
        const surrogate::SurrogateModel model = surrogate::load_model(model_path);
        report = surrogate::infer(model, scenario);
        break;
    }
    case harness::SolverId::kExact: {
        const exact::ExactResult res = exact::solve(scenario, kind);
        report.solver = "exact";
        report.kind = kind;
        report.best = res.solution;
        report.delays = evaluate(scenario, report.best);
        report.objective_s = objective(report.delays, kind);
        report.evaluations = res.enumerated;
        break;
    }
    }

    std::cout << report.solver << ": " << objective_kind_name(kind) << " objective "
              << report.objective_s << " s, " << report.evaluations << " evaluations, "
              << report.wall_time_s << " s wall\n";
    if (!out_path.empty())
        save_solution(report.best, out_path);
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write " + report_path);
        out << solver_report_to_json(report);
    }
    return 0;
}

int cmd_train(const CommonArgs& common, const std::string& corpus_dir, int count, bool count_set,
              std::int64_t label_budget, bool label_budget_set, const std::string& dataset_out,
              const std::string& model_out, int jobs) {
    const Config cfg = common.config();
    surrogate::TrainConfig tc = train_config_from(cfg);
    if (count_set)
        tc.dataset_size = count;
    const std::int64_t budget =
        label_budget_set ? label_budget : cfg.get_int("train", "label_budget", 50000);

    std::vector<Scenario> corpus;
    if (!corpus_dir.empty())
        corpus = load_corpus_dir(corpus_dir);
    else
        corpus = scengen::generate_corpus(gen_config_from(cfg), tc.dataset_size);

    std::cout << "labelling " << corpus.size() << " scenarios with evo at budget " << budget
              << "...\n";
    const std::vector<Solution> labels =
        harness::evo_labels(corpus, budget, tc.seed, jobs, evo_base_from(cfg));

    if (!dataset_out.empty()) {
        fs::create_directories(dataset_out);
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            save_scenario(corpus[i], fs::path(dataset_out) / scenario_filename(static_cast<int>(i)));
            char buf[40];
            std::snprintf(buf, sizeof(buf), "scenario_%05d.label.json", static_cast<int>(i));
            save_solution(labels[i], fs::path(dataset_out) / buf);
        }
    }

    tc.label_solver = "evo-" + std::to_string(budget);
    std::cout << "training (" << tc.epochs << " epochs, lr " << tc.learning_rate << ")...\n";
    const surrogate::SurrogateModel model = surrogate::train(corpus, labels, tc);
    surrogate::save_model(model, model_out);
    std::cout << "model written to " << model_out << " (final train loss "
              << (model.meta.train_loss.empty() ? 0.0 : model.meta.train_loss.back()) << ")\n";
    return 0;
}

int cmd_bench(const CommonArgs& common, const std::string& corpus_dir,
              const std::string& model_path, const std::string& out_dir,
              const std::string& objective_name, int jobs) {
    const Config cfg = common.config();
    const std::vector<harness::BenchSetting> settings = settings_from(cfg);

    std::vector<Scenario> corpus;
    if (!corpus_dir.empty())
        corpus = load_corpus_dir(corpus_dir);
    else
        corpus = scengen::generate_corpus(gen_config_from(cfg),
                                          static_cast<int>(cfg.get_int("gen", "count", 100)));

    harness::RunOptions options;
    options.jobs = jobs;
    options.ga_base = ga_base_from(cfg);
    options.evo_base = evo_base_from(cfg);

    surrogate::SurrogateModel model;
    const std::string model_file = !model_path.empty() ? model_path
                                                       : cfg.get_or("bench", "model", "");
    const bool needs_model = std::any_of(settings.begin(), settings.end(), [](const auto& s) {
        return s.solver == harness::SolverId::kSurrogate;
    });
    if (needs_model) {
        if (model_file.empty())
            throw ConfigError("bench: a surrogate setting needs --model or [bench] model");
        model = surrogate::load_model(model_file);
        options.model = &model;
    }

    const ObjectiveKind kind = objective_kind_from_name(
        !objective_name.empty() ? objective_name : cfg.get_or("bench", "objective", "total"));

    const harness::BenchReport report = harness::run_bench(corpus, settings, kind, options);

    fs::create_directories(out_dir);
    harness::write_csv(report, fs::path(out_dir) / "bench.csv");
    harness::render_svg(report, out_dir);
    std::cout << "report written to " << out_dir << " (bench.csv, delay.svg, time.svg, wins.svg)\n";
    for (const harness::SettingSummary& s : report.summary)
        std::cout << "  " << s.name << ": mean delay " << s.mean_total_s << " s, wins " << s.wins
                  << (s.failures ? ", failures " + std::to_string(s.failures) : "") << "\n";
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_dir) {
    const harness::BenchReport report = harness::read_csv(csv_path);
    fs::create_directories(out_dir);
    harness::render_svg(report, out_dir);
    std::cout << "charts written to " << out_dir << "\n";
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"edgesched: joint request-assignment and bandwidth-allocation toolkit"};
    app.require_subcommand(1);

    CommonArgs common;
    app.add_option("--config", common.config_path, "key/value config file")
        ->configurable(false);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a scenario corpus");
    std::int64_t gen_seed = 0;
    int gen_count = 100;
    std::string gen_out;
    auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "base scenario seed");
    auto* gen_count_opt = gen->add_option("--count", gen_count, "number of scenarios");
    gen->add_option("--out", gen_out, "output directory")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "run one solver on one scenario");
    std::string solve_scenario, solve_solver, solve_objective = "total";
    std::string solve_model, solve_out, solve_report;
    std::int64_t solve_budget = 5000, solve_seed = 0;
    solve->add_option("--scenario", solve_scenario, "scenario JSON file")->required();
    solve->add_option("--solver", solve_solver, "ga | evo | surrogate | exact")->required();
    solve->add_option("--budget", solve_budget, "evaluation budget");
    solve->add_option("--seed", solve_seed, "run seed");
    solve->add_option("--objective", solve_objective, "total | makespan");
    solve->add_option("--model", solve_model, "model file (surrogate)");
    solve->add_option("--out", solve_out, "write the solution JSON here");
    solve->add_option("--report", solve_report, "write the full solver report here");

    // train
    auto* train = app.add_subcommand("train", "label a corpus with evo and train the surrogate");
    std::string train_corpus, train_dataset_out, train_model_out;
    int train_count = 0, train_jobs = 1;
    std::int64_t train_label_budget = 50000;
    train->add_option("--corpus", train_corpus, "read scenarios from this directory");
    auto* train_count_opt = train->add_option("--count", train_count, "dataset size to generate");
    auto* train_budget_opt =
        train->add_option("--label-budget", train_label_budget, "evo budget for labels");
    train->add_option("--dataset-out", train_dataset_out, "dump scenario/label pairs here");
    train->add_option("--out", train_model_out, "model file to write")->required();
    train->add_option("--jobs", train_jobs, "parallel labelling workers");

    // bench
    auto* bench = app.add_subcommand("bench", "run the full comparison");
    std::string bench_corpus, bench_model, bench_out, bench_objective;
    int bench_jobs = 1;
    bench->add_option("--corpus", bench_corpus, "read scenarios from this directory");
    bench->add_option("--model", bench_model, "trained surrogate model");
    bench->add_option("--out", bench_out, "report directory")->required();
    bench->add_option("--objective", bench_objective, "total | makespan");
    bench->add_option("--jobs", bench_jobs, "worker threads (use 1 for timing-grade runs)");

    // plot
    auto* plot = app.add_subcommand("plot", "re-render charts from a bench CSV");
    std::string plot_csv, plot_out;
    plot->add_option("--csv", plot_csv, "bench.csv produced by bench")->required();
    plot->add_option("--out", plot_out, "chart directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed())
            return cmd_gen(common, gen_seed, gen_seed_opt->count() > 0, gen_count,
                           gen_count_opt->count() > 0, gen_out);
        if (solve->parsed())
            return cmd_solve(common, solve_scenario, solve_solver, solve_budget, solve_seed,
                             solve_objective, solve_model, solve_out, solve_report);
        if (train->parsed())
            return cmd_train(common, train_corpus, train_count, train_count_opt->count() > 0,
                             train_label_budget, train_budget_opt->count() > 0,
                             train_dataset_out, train_model_out, train_jobs);
        if (bench->parsed())
            return cmd_bench(common, bench_corpus, bench_model, bench_out, bench_objective,
                             bench_jobs);
        if (plot->parsed())
            return cmd_plot(plot_csv, plot_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace edgesched::cli
