#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgesched/channel.hpp"

namespace edgesched {

/// A base station with wireless bandwidth and processing capacity.
struct EdgeNode {
    int id = 0;
    double bandwidth_mhz = 0.0; // B_v, total wireless bandwidth
    double capacity_mhz = 0.0;  // C_v, total hardware capacity
};

/// One serverless request: a job of a given size with a hardware demand
/// and a distance to every edge node.
struct Request {
    int id = 0;
    double size_mbit = 0.0;          // L_k, job payload (also its compute work)
    double demand_mhz = 0.0;         // c_k, hardware required by its container
    std::vector<double> distances_m; // d_k^v, one entry per node
};

struct Scenario {
    std::vector<EdgeNode> nodes;
    std::vector<Request> requests;
    channel::WirelessParams wireless;
    std::uint64_t seed = 0;
    int slot_count = 1; // |T|; all solvers operate on a single slot

    int node_count() const { return static_cast<int>(nodes.size()); }
    int request_count() const { return static_cast<int>(requests.size()); }
};

/// A schedule: every request sits on exactly one node and owns an integer
/// number of bandwidth MHz (>= 1, otherwise its transmission is undefined).
struct Solution {
    std::vector<int> assignment; // per request: node index
    std::vector<int> bandwidth;  // per request: allocated MHz

    bool operator==(const Solution&) const = default;
};

struct RequestDelay {
    double transmission_s = 0.0;
    double processing_s = 0.0;
    double total_s = 0.0;
};

/// Per-request latency breakdown; aggregates use fixed request-id order so
/// the sums are reproducible bit for bit.
struct DelayReport {
    std::vector<RequestDelay> per_request;
    double sum_total_s = 0.0;
    double max_total_s = 0.0;
};

enum class ObjectiveKind { kTotal, kMakespan };

const char* objective_kind_name(ObjectiveKind kind);
ObjectiveKind objective_kind_from_name(const std::string& name);

struct Violation {
    enum class Kind { kBandwidthCapacity, kComputeCapacity, kAssignment, kMinBandwidth };
    Kind kind;
    int node = -1;    // offending node, -1 when not node-scoped
    int request = -1; // offending request, -1 when not request-scoped
    double excess = 0.0;
    std::string describe() const;
};

// Latency of moving request_id's payload to its assigned node over its
// allocated band. Throws std::domain_error when the allocation is 0.
double transmission_delay(const Scenario& scenario, const Solution& solution, int request_id);

// L_k / c_k: the container runs at exactly the capacity the request demands,
// 1 MHz processing 1 mega-cycle per second.
double processing_delay(const Scenario& scenario, const Solution& solution, int request_id);

DelayReport evaluate(const Scenario& scenario, const Solution& solution);

double objective(const DelayReport& report, ObjectiveKind kind);

// Empty result iff the solution is feasible: per node the assigned bandwidth
// and demand sums stay within B_v / C_v (boundary inclusive), every request
// has a valid node and at least 1 MHz. Violations are data, not errors.
std::vector<Violation> check_feasibility(const Scenario& scenario, const Solution& solution);

// Shape-validity only (vector sizes, node indices in range, b >= 1).
// Solvers assert this before evaluating anything.
bool shape_feasible(const Scenario& scenario, const Solution& solution);

/// Precomputes the distance/power part of the channel chain per
/// (request, node) so search loops only pay for the bandwidth-dependent
/// part. Produces bit-identical results to evaluate().
class DelayEvaluator {
public:
    explicit DelayEvaluator(const Scenario& scenario);

    double transmission_delay(const Solution& solution, int request_id) const;
    double request_total(const Solution& solution, int request_id) const;
    DelayReport evaluate(const Solution& solution) const;
    double objective(const Solution& solution, ObjectiveKind kind) const;

    const Scenario& scenario() const { return *scenario_; }

private:
    const Scenario* scenario_;
    std::vector<double> rx_mw_;   // request-major [k * V + v]: received power in mW
    std::vector<double> proc_s_;  // per request: L_k / c_k
};

} // namespace edgesched
