#include "edgesched/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgesched/errors.hpp"

namespace edgesched {

const char* objective_kind_name(ObjectiveKind kind) {
    return kind == ObjectiveKind::kTotal ? "total" : "makespan";
}

ObjectiveKind objective_kind_from_name(const std::string& name) {
    if (name == "total")
        return ObjectiveKind::kTotal;
    if (name == "makespan")
        return ObjectiveKind::kMakespan;
    throw ConfigError("unknown objective kind: " + name);
}

std::string Violation::describe() const {
    switch (kind) {
    case Kind::kBandwidthCapacity:
        return "node " + std::to_string(node) + ": bandwidth over capacity by " +
               std::to_string(excess) + " MHz";
    case Kind::kComputeCapacity:
        return "node " + std::to_string(node) + ": demand over capacity by " +
               std::to_string(excess) + " MHz";
    case Kind::kAssignment:
        return "request " + std::to_string(request) + ": invalid node assignment";
    case Kind::kMinBandwidth:
        return "request " + std::to_string(request) + ": bandwidth below 1 MHz";
    }
    return "unknown violation";
}

static void require_shape(const Scenario& scenario, const Solution& solution) {
    if (!shape_feasible(scenario, solution))
        throw std::invalid_argument("solution shape does not match scenario");
}

bool shape_feasible(const Scenario& scenario, const Solution& solution) {
    const int k = scenario.request_count();
    const int v = scenario.node_count();
    if (static_cast<int>(solution.assignment.size()) != k ||
        static_cast<int>(solution.bandwidth.size()) != k)
        return false;
    for (int i = 0; i < k; ++i) {
        if (solution.assignment[i] < 0 || solution.assignment[i] >= v)
            return false;
        if (solution.bandwidth[i] < 1)
            return false;
    }
    return true;
}

double transmission_delay(const Scenario& scenario, const Solution& solution, int request_id) {
    require_shape(scenario, solution);
    const Request& req = scenario.requests.at(request_id);
    const int node = solution.assignment.at(request_id);
    return channel::transmission_time(scenario.wireless, req.distances_m.at(node),
                                      static_cast<double>(solution.bandwidth.at(request_id)),
                                      req.size_mbit);
}

double processing_delay(const Scenario& scenario, const Solution& solution, int request_id) {
    (void)solution;
    const Request& req = scenario.requests.at(request_id);
    if (!(req.demand_mhz > 0.0))
        throw std::domain_error("processing_delay: request demand must be positive");
    return req.size_mbit / req.demand_mhz;
}

DelayReport evaluate(const Scenario& scenario, const Solution& solution) {
    require_shape(scenario, solution);
    DelayReport report;
    report.per_request.resize(scenario.requests.size());
    for (int k = 0; k < scenario.request_count(); ++k) {
        RequestDelay& d = report.per_request[k];
        d.transmission_s = transmission_delay(scenario, solution, k);
        d.processing_s = processing_delay(scenario, solution, k);
        d.total_s = d.transmission_s + d.processing_s;
        report.sum_total_s += d.total_s;
        report.max_total_s = std::max(report.max_total_s, d.total_s);
    }
    return report;
}

double objective(const DelayReport& report, ObjectiveKind kind) {
    return kind == ObjectiveKind::kTotal ? report.sum_total_s : report.max_total_s;
}

std::vector<Violation> check_feasibility(const Scenario& scenario, const Solution& solution) {
    std::vector<Violation> out;
    const int kcount = scenario.request_count();
    const int vcount = scenario.node_count();

    if (static_cast<int>(solution.assignment.size()) != kcount ||
        static_cast<int>(solution.bandwidth.size()) != kcount) {
        out.push_back({Violation::Kind::kAssignment, -1, -1,
                       static_cast<double>(kcount)});
        return out;
    }

    for (int k = 0; k < kcount; ++k) {
        const int v = solution.assignment[k];
        if (v < 0 || v >= vcount)
            out.push_back({Violation::Kind::kAssignment, v, k, 0.0});
        if (solution.bandwidth[k] < 1)
            out.push_back({Violation::Kind::kMinBandwidth, -1, k,
                           1.0 - solution.bandwidth[k]});
    }

    // Per-node sums in request-id order so the comparison is reproducible.
    std::vector<double> band_sum(vcount, 0.0);
    std::vector<double> demand_sum(vcount, 0.0);
    for (int k = 0; k < kcount; ++k) {
        const int v = solution.assignment[k];
        if (v < 0 || v >= vcount)
            continue;
        band_sum[v] += solution.bandwidth[k];
        demand_sum[v] += scenario.requests[k].demand_mhz;
    }
    for (int v = 0; v < vcount; ++v) {
        if (band_sum[v] > scenario.nodes[v].bandwidth_mhz)
            out.push_back({Violation::Kind::kBandwidthCapacity, v, -1,
                           band_sum[v] - scenario.nodes[v].bandwidth_mhz});
        if (demand_sum[v] > scenario.nodes[v].capacity_mhz)
            out.push_back({Violation::Kind::kComputeCapacity, v, -1,
                           demand_sum[v] - scenario.nodes[v].capacity_mhz});
    }
    return out;
}

DelayEvaluator::DelayEvaluator(const Scenario& scenario) : scenario_(&scenario) {
    const int kcount = scenario.request_count();
    const int vcount = scenario.node_count();
    rx_mw_.resize(static_cast<std::size_t>(kcount) * vcount);
    proc_s_.resize(kcount);
    for (int k = 0; k < kcount; ++k) {
        const Request& req = scenario.requests[k];
        if (!(req.demand_mhz > 0.0))
            throw std::domain_error("DelayEvaluator: request demand must be positive");
        proc_s_[k] = req.size_mbit / req.demand_mhz;
        for (int v = 0; v < vcount; ++v) {
            const double loss = channel::path_loss_db(req.distances_m.at(v),
                                                      scenario.wireless.carrier_freq_ghz);
            rx_mw_[static_cast<std::size_t>(k) * vcount + v] = channel::dbm_to_mw(
                channel::received_power_dbm(scenario.wireless.tx_power_dbm, loss));
        }
    }
}

double DelayEvaluator::transmission_delay(const Solution& solution, int request_id) const {
    const int v = solution.assignment[request_id];
    const double rx = rx_mw_[static_cast<std::size_t>(request_id) * scenario_->node_count() + v];
    const double b = static_cast<double>(solution.bandwidth[request_id]);
    const double ratio = channel::snr(rx, b, scenario_->wireless.noise_mw_per_mhz);
    return channel::tx_time_s(scenario_->requests[request_id].size_mbit,
                              channel::tx_rate_mbps(b, ratio));
}

double DelayEvaluator::request_total(const Solution& solution, int request_id) const {
    return transmission_delay(solution, request_id) + proc_s_[request_id];
}

DelayReport DelayEvaluator::evaluate(const Solution& solution) const {
    DelayReport report;
    const int kcount = scenario_->request_count();
    report.per_request.resize(kcount);
    for (int k = 0; k < kcount; ++k) {
        RequestDelay& d = report.per_request[k];
        d.transmission_s = transmission_delay(solution, k);
        d.processing_s = proc_s_[k];
        d.total_s = d.transmission_s + d.processing_s;
        report.sum_total_s += d.total_s;
        report.max_total_s = std::max(report.max_total_s, d.total_s);
    }
    return report;
}

double DelayEvaluator::objective(const Solution& solution, ObjectiveKind kind) const {
    const int kcount = scenario_->request_count();
    if (kind == ObjectiveKind::kTotal) {
        double sum = 0.0;
        for (int k = 0; k < kcount; ++k)
            sum += request_total(solution, k);
        return sum;
    }
    double worst = 0.0;
    for (int k = 0; k < kcount; ++k)
        worst = std::max(worst, request_total(solution, k));
    return worst;
}

} // namespace edgesched
