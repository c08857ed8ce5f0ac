#include "edgesched/solver_report.hpp"

#include <json.hpp>

namespace edgesched {

std::string solver_report_to_json(const SolverReport& report) {
    nlohmann::json per_request = nlohmann::json::array();
    for (const RequestDelay& d : report.delays.per_request)
        per_request.push_back({{"transmission_s", d.transmission_s},
                               {"processing_s", d.processing_s},
                               {"total_s", d.total_s}});
    nlohmann::json assignments = nlohmann::json::array();
    for (std::size_t k = 0; k < report.best.assignment.size(); ++k)
        assignments.push_back({{"request", k},
                               {"node", report.best.assignment[k]},
                               {"bandwidth_mhz", report.best.bandwidth[k]}});
    nlohmann::json curve = nlohmann::json::array();
    for (const CurvePoint& p : report.curve)
        curve.push_back({{"evaluations", p.evaluations}, {"best_s", p.best_s}});
    nlohmann::json doc = {{"solver", report.solver},
                          {"objective", objective_kind_name(report.kind)},
                          {"objective_s", report.objective_s},
                          {"sum_total_s", report.delays.sum_total_s},
                          {"max_total_s", report.delays.max_total_s},
                          {"evaluations", report.evaluations},
                          {"wall_time_s", report.wall_time_s},
                          {"assignments", assignments},
                          {"per_request", per_request},
                          {"curve", curve}};
    return doc.dump(2) + "\n";
}

} // namespace edgesched
