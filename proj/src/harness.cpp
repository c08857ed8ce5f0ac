#include "edgesched/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "edgesched/errors.hpp"
#include "edgesched/exact.hpp"

namespace edgesched::harness {

const char* solver_name(SolverId id) {
    switch (id) {
    case SolverId::kGa:
        return "ga";
    case SolverId::kEvo:
        return "evo";
    case SolverId::kSurrogate:
        return "surrogate";
    case SolverId::kExact:
        return "exact";
    }
    return "?";
}

SolverId solver_from_name(const std::string& name) {
    if (name == "ga")
        return SolverId::kGa;
    if (name == "evo")
        return SolverId::kEvo;
    if (name == "surrogate")
        return SolverId::kSurrogate;
    if (name == "exact")
        return SolverId::kExact;
    throw ConfigError("unknown solver: " + name);
}

namespace {

SolverReport run_cell(const Scenario& scenario, const BenchSetting& setting,
                      std::uint64_t run_seed, ObjectiveKind kind, const RunOptions& options) {
    switch (setting.solver) {
    case SolverId::kGa: {
        ga::GaParams params = ga::params_for_budget(setting.budget, options.ga_base);
        params.seed = run_seed;
        return ga::solve(scenario, params, kind);
    }
    case SolverId::kEvo: {
        evo::EvoParams params = options.evo_base;
        params.budget = setting.budget;
        params.seed = run_seed;
        return evo::solve(scenario, params, kind);
    }
    case SolverId::kSurrogate:
        return surrogate::infer(*options.model, scenario);
    case SolverId::kExact: {
        const exact::ExactResult res = exact::solve(scenario, kind);
        SolverReport report;
        report.solver = "exact";
        report.kind = kind;
        report.best = res.solution;
        report.delays = evaluate(scenario, report.best);
        report.objective_s = objective(report.delays, kind);
        report.evaluations = res.enumerated;
        return report;
    }
    }
    throw ConfigError("unhandled solver id");
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

} // namespace

BenchReport run_bench(const std::vector<Scenario>& corpus,
                      const std::vector<BenchSetting>& settings, ObjectiveKind kind,
                      const RunOptions& options) {
    if (corpus.empty())
        throw ConfigError("bench: empty corpus");
    if (settings.empty())
        throw ConfigError("bench: no settings");
    {
        std::vector<std::string> names;
        for (const BenchSetting& s : settings) {
            names.push_back(s.name);
            if (s.solver == SolverId::kSurrogate && options.model == nullptr)
                throw ConfigError("bench: setting '" + s.name + "' needs a trained model");
        }
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw ConfigError("bench: setting names must be unique");
    }

    BenchReport report;
    report.kind = kind;
    report.scenario_count = static_cast<int>(corpus.size());
    for (const BenchSetting& s : settings)
        report.settings.push_back(s.name);
    const std::size_t cell_count = corpus.size() * settings.size();
    report.cells.assign(cell_count, {});

    std::vector<std::string> hard_failures(cell_count);

    const auto work = [&](std::size_t cell_index) {
        const std::size_t scenario_index = cell_index / settings.size();
        const std::size_t setting_index = cell_index % settings.size();
        const Scenario& scenario = corpus[scenario_index];
        const BenchSetting& setting = settings[setting_index];
        BenchCell& cell = report.cells[cell_index];
        try {
            const SolverReport solved = run_cell(
                scenario, setting, setting.seed + scenario_index, kind, options);
            // Feasibility is a global contract: recheck at assembly time.
            const auto violations = check_feasibility(scenario, solved.best);
            if (!violations.empty()) {
                std::string detail = "setting " + setting.name + ", scenario " +
                                     std::to_string(scenario_index) + ":";
                for (const Violation& v : violations)
                    detail += " " + v.describe() + ";";
                hard_failures[cell_index] = detail;
                return;
            }
            cell.total_s = solved.delays.sum_total_s;
            cell.makespan_s = solved.delays.max_total_s;
            cell.wall_s = solved.wall_time_s;
            cell.evaluations = solved.evaluations;
            cell.solved = true;
        } catch (const InfeasibleDecodeError&) {
            // Decode failures stay per-cell data: the summary reports them
            // as failures and the cell is excluded from means and wins.
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < cell_count; ++i)
            work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr thread_error = nullptr;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cell_count; i = next.fetch_add(1)) {
                    try {
                        work(i);
                    } catch (...) {
                        const std::lock_guard<std::mutex> lock(error_mutex);
                        if (!thread_error)
                            thread_error = std::current_exception();
                    }
                }
            });
        for (std::thread& t : pool)
            t.join();
        if (thread_error)
            std::rethrow_exception(thread_error);
    }

    for (const std::string& failure : hard_failures)
        if (!failure.empty())
            throw InfeasibleInstanceError("bench: infeasible solution emitted: " + failure);

    // Winner per scenario: minimum by the ranking objective within tolerance.
    report.summary.assign(settings.size(), {});
    for (std::size_t i = 0; i < settings.size(); ++i)
        report.summary[i].name = settings[i].name;
    for (int s = 0; s < report.scenario_count; ++s) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < settings.size(); ++i) {
            const BenchCell& cell = report.cell(s, static_cast<int>(i));
            if (cell.solved)
                best = std::min(best,
                                kind == ObjectiveKind::kTotal ? cell.total_s : cell.makespan_s);
        }
        for (std::size_t i = 0; i < settings.size(); ++i) {
            const BenchCell& cell = report.cell(s, static_cast<int>(i));
            if (!cell.solved)
                continue;
            const double value = kind == ObjectiveKind::kTotal ? cell.total_s : cell.makespan_s;
            if (value <= best + kWinTieTolerance)
                ++report.summary[i].wins;
        }
    }
    for (std::size_t i = 0; i < settings.size(); ++i) {
        SettingSummary& sum = report.summary[i];
        double mean = 0.0, mean_wall = 0.0;
        int solved = 0;
        for (int s = 0; s < report.scenario_count; ++s) {
            const BenchCell& cell = report.cell(s, static_cast<int>(i));
            if (!cell.solved) {
                ++sum.failures;
                continue;
            }
            mean += cell.total_s;
            mean_wall += cell.wall_s;
            ++solved;
        }
        if (solved > 0) {
            mean /= solved;
            mean_wall /= solved;
            double var = 0.0;
            for (int s = 0; s < report.scenario_count; ++s) {
                const BenchCell& cell = report.cell(s, static_cast<int>(i));
                if (cell.solved)
                    var += (cell.total_s - mean) * (cell.total_s - mean);
            }
            sum.mean_total_s = mean;
            sum.stddev_total_s = std::sqrt(var / solved);
            sum.mean_wall_s = mean_wall;
        }
    }
    return report;
}

void write_csv(const BenchReport& report, const std::filesystem::path& path) {
    if (report.settings.empty() || report.scenario_count == 0)
        throw ConfigError("write_csv: refusing to write an empty report");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path.string());

    out << "# edgesched bench v1 objective=" << objective_kind_name(report.kind)
        << " scenarios=" << report.scenario_count << " settings=" << report.settings.size()
        << "\n";
    out << "scenario,setting,total_s,makespan_s,wall_time_s,evaluations,solved\n";
    for (int s = 0; s < report.scenario_count; ++s) {
        for (std::size_t i = 0; i < report.settings.size(); ++i) {
            const BenchCell& cell = report.cell(s, static_cast<int>(i));
            out << s << ',' << report.settings[i] << ',' << format_double(cell.total_s) << ','
                << format_double(cell.makespan_s) << ',' << format_double(cell.wall_s) << ','
                << cell.evaluations << ',' << (cell.solved ? 1 : 0) << "\n";
        }
    }
    out << "\n";
    out << "setting,mean_total_s,stddev_total_s,mean_wall_s,wins,failures\n";
    for (const SettingSummary& sum : report.summary)
        out << sum.name << ',' << format_double(sum.mean_total_s) << ','
            << format_double(sum.stddev_total_s) << ',' << format_double(sum.mean_wall_s) << ','
            << sum.wins << ',' << sum.failures << "\n";
    if (!out)
        throw ConfigError("write failed for " + path.string());
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        fields.push_back(field);
    return fields;
}

} // namespace

BenchReport read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open " + path.string());

    BenchReport report;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# edgesched bench v1", 0) != 0)
        throw ConfigError("not an edgesched bench CSV: " + path.string());
    {
        std::istringstream header(line);
        std::string token;
        int setting_count = 0;
        while (header >> token) {
            if (token.rfind("objective=", 0) == 0)
                report.kind = objective_kind_from_name(token.substr(10));
            else if (token.rfind("scenarios=", 0) == 0)
                report.scenario_count = std::stoi(token.substr(10));
            else if (token.rfind("settings=", 0) == 0)
                setting_count = std::stoi(token.substr(9));
        }
        if (report.scenario_count <= 0 || setting_count <= 0)
            throw ConfigError("bench CSV header is incomplete");
        report.settings.reserve(setting_count);
    }
    if (!std::getline(in, line)) // column header
        throw ConfigError("bench CSV truncated");

    while (std::getline(in, line) && !line.empty()) {
        const auto fields = split_csv(line);
        if (fields.size() != 7)
            throw ConfigError("bench CSV row has " + std::to_string(fields.size()) + " fields");
        if (std::find(report.settings.begin(), report.settings.end(), fields[1]) ==
            report.settings.end())
            report.settings.push_back(fields[1]);
        BenchCell cell;
        cell.total_s = std::stod(fields[2]);
        cell.makespan_s = std::stod(fields[3]);
        cell.wall_s = std::stod(fields[4]);
        cell.evaluations = std::stoll(fields[5]);
        cell.solved = fields[6] == "1";
        report.cells.push_back(cell);
    }
    if (report.cells.size() !=
        static_cast<std::size_t>(report.scenario_count) * report.settings.size())
        throw ConfigError("bench CSV cell count does not match its header");

    if (!std::getline(in, line)) // summary column header
        throw ConfigError("bench CSV is missing its summary block");
    while (std::getline(in, line) && !line.empty()) {
        const auto fields = split_csv(line);
        if (fields.size() != 6)
            throw ConfigError("bench CSV summary row has " + std::to_string(fields.size()) +
                              " fields");
        SettingSummary sum;
        sum.name = fields[0];
        sum.mean_total_s = std::stod(fields[1]);
        sum.stddev_total_s = std::stod(fields[2]);
        sum.mean_wall_s = std::stod(fields[3]);
        sum.wins = std::stoi(fields[4]);
        sum.failures = std::stoi(fields[5]);
        report.summary.push_back(sum);
    }
    if (report.summary.size() != report.settings.size())
        throw ConfigError("bench CSV summary does not cover every setting");
    return report;
}

namespace {

void render_bar_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<std::string>& names, const std::vector<double>& values,
                      const std::string& value_format) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path.string());

    const int width = 640, height = 400;
    const int left = 60, right = 20, top = 50, bottom = 60;
    const int plot_w = width - left - right;
    const int plot_h = height - top - bottom;
    const int n = static_cast<int>(names.size());
    double max_value = 0.0;
    for (double v : values)
        max_value = std::max(max_value, v);
    if (max_value <= 0.0)
        max_value = 1.0;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\" stroke=\"none\"/>\n";
    out << "  <text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"18\">" << title << "</text>\n";
    out << "  <line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";

    char buf[64];
    const double slot = static_cast<double>(plot_w) / n;
    for (int i = 0; i < n; ++i) {
        const double bar_w = slot * 0.6;
        const double x = left + slot * i + slot * 0.2;
        const double h = plot_h * (values[i] / max_value);
        const double y = top + plot_h - h;
        std::snprintf(buf, sizeof(buf), "%.6g", h);
        out << "  <rect class=\"bar\" x=\"" << format_double(x) << "\" y=\"" << format_double(y)
            << "\" width=\"" << format_double(bar_w) << "\" height=\"" << buf
            << "\" fill=\"#5680c2\"/>\n";
        std::snprintf(buf, sizeof(buf), value_format.c_str(), values[i]);
        out << "  <text x=\"" << format_double(x + bar_w / 2) << "\" y=\""
            << format_double(y - 6) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"12\">" << buf << "</text>\n";
        out << "  <text x=\"" << format_double(x + bar_w / 2) << "\" y=\""
            << top + plot_h + 20 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"12\">" << names[i] << "</text>\n";
    }
    out << "</svg>\n";
    if (!out)
        throw ConfigError("write failed for " + path.string());
}

} // namespace

std::vector<Solution> evo_labels(const std::vector<Scenario>& corpus, std::int64_t budget,
                                 std::uint64_t seed, int jobs, const evo::EvoParams& base) {
    std::vector<Solution> labels(corpus.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error = nullptr;
    std::mutex error_mutex;
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < corpus.size(); i = next.fetch_add(1)) {
            try {
                evo::EvoParams params = base;
                params.budget = budget;
                params.seed = seed + i;
                labels[i] = evo::solve(corpus[i], params).best;
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);
    return labels;
}

void render_svg(const BenchReport& report, const std::filesystem::path& out_dir) {
    if (report.settings.empty())
        throw ConfigError("render_svg: report has no settings");
    std::vector<double> delays, walls, wins;
    for (const SettingSummary& sum : report.summary) {
        delays.push_back(sum.mean_total_s);
        walls.push_back(sum.mean_wall_s);
        wins.push_back(static_cast<double>(sum.wins));
    }
    render_bar_chart(out_dir / "delay.svg", "Mean total delay [s]", report.settings, delays,
                     "%.4g");
    render_bar_chart(out_dir / "time.svg", "Mean solve wall time [s]", report.settings, walls,
                     "%.4g");
    render_bar_chart(out_dir / "wins.svg", "Scenario wins", report.settings, wins, "%.0f");
}

} // namespace edgesched::harness
