#include "edgesched/surrogate.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>

#include "edgesched/errors.hpp"

namespace edgesched::surrogate {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Flat parameter layout. Each recurrent layer stores W [4H x in], U [4H x H]
// and b [4H], gate-major rows in the order input, forget, cell, output;
// the head stores W_out [(V+1) x H] and b_out [V+1], node logits first.
struct Layout {
    int hidden;
    int input_dim;
    int node_count;
    std::size_t w1, u1, b1, w2, u2, b2, wo, bo, total;

    Layout(int h, int in, int v) : hidden(h), input_dim(in), node_count(v) {
        const std::size_t H = h;
        w1 = 0;
        u1 = w1 + 4 * H * in;
        b1 = u1 + 4 * H * H;
        w2 = b1 + 4 * H;
        u2 = w2 + 4 * H * H;
        b2 = u2 + 4 * H * H;
        wo = b2 + 4 * H;
        bo = wo + static_cast<std::size_t>(v + 1) * H;
        total = bo + v + 1;
    }
};

Layout layout_of(const SurrogateModel& m) { return {m.hidden, m.input_dim, m.node_count}; }

// y += M x with M stored row-major [rows x cols].
void matvec_acc(const double* m, const double* x, double* y, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double acc = 0.0;
        const double* row = m + static_cast<std::size_t>(r) * cols;
        for (int c = 0; c < cols; ++c)
            acc += row[c] * x[c];
        y[r] += acc;
    }
}

// y += M^T x for row-major M [rows x cols]; y has cols entries.
void matvec_transpose_acc(const double* m, const double* x, double* y, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* row = m + static_cast<std::size_t>(r) * cols;
        const double xr = x[r];
        for (int c = 0; c < cols; ++c)
            y[c] += row[c] * xr;
    }
}

// G += outer(a, b) for row-major G [rows x cols].
void outer_acc(double* g, const double* a, const double* b, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* row = g + static_cast<std::size_t>(r) * cols;
        const double ar = a[r];
        for (int c = 0; c < cols; ++c)
            row[c] += ar * b[c];
    }
}

// All per-step state of one forward pass, kept for backprop.
struct Trace {
    int steps = 0;
    // Indexed [layer][step]: activations are post-nonlinearity.
    std::vector<std::vector<double>> gates[2]; // 4H per step: i, f, g, o
    std::vector<std::vector<double>> cell[2];  // H
    std::vector<std::vector<double>> hidden[2];
    std::vector<std::vector<double>> out; // V+1 raw head outputs
};

void run_forward(const SurrogateModel& model, const FeatureSequence& features, Trace& trace) {
    const Layout lay = layout_of(model);
    const int H = model.hidden;
    const int T = static_cast<int>(features.size());
    const double* p = model.params.data();

    trace.steps = T;
    for (int l = 0; l < 2; ++l) {
        trace.gates[l].assign(T, std::vector<double>(4 * H));
        trace.cell[l].assign(T, std::vector<double>(H));
        trace.hidden[l].assign(T, std::vector<double>(H));
    }
    trace.out.assign(T, std::vector<double>(model.node_count + 1));

    std::vector<double> h_prev[2] = {std::vector<double>(H, 0.0), std::vector<double>(H, 0.0)};
    std::vector<double> c_prev[2] = {std::vector<double>(H, 0.0), std::vector<double>(H, 0.0)};

    for (int t = 0; t < T; ++t) {
        if (static_cast<int>(features[t].size()) != model.input_dim)
            throw ConfigError("featurized row width does not match the model input");
        const double* x = features[t].data();
        for (int l = 0; l < 2; ++l) {
            const double* w = p + (l == 0 ? lay.w1 : lay.w2);
            const double* u = p + (l == 0 ? lay.u1 : lay.u2);
            const double* b = p + (l == 0 ? lay.b1 : lay.b2);
            const int in_dim = l == 0 ? model.input_dim : H;
            const double* in = l == 0 ? x : trace.hidden[0][t].data();

            std::vector<double>& z = trace.gates[l][t];
            std::copy(b, b + 4 * H, z.begin());
            matvec_acc(w, in, z.data(), 4 * H, in_dim);
            matvec_acc(u, h_prev[l].data(), z.data(), 4 * H, H);

            std::vector<double>& c = trace.cell[l][t];
            std::vector<double>& h = trace.hidden[l][t];
            for (int j = 0; j < H; ++j) {
                const double ig = sigmoid(z[j]);
                const double fg = sigmoid(z[H + j]);
                const double gg = std::tanh(z[2 * H + j]);
                const double og = sigmoid(z[3 * H + j]);
                z[j] = ig;
                z[H + j] = fg;
                z[2 * H + j] = gg;
                z[3 * H + j] = og;
                c[j] = fg * c_prev[l][j] + ig * gg;
                h[j] = og * std::tanh(c[j]);
            }
            h_prev[l] = h;
            c_prev[l] = c;
        }
        std::vector<double>& out = trace.out[t];
        std::copy(p + lay.bo, p + lay.bo + model.node_count + 1, out.begin());
        matvec_acc(p + lay.wo, trace.hidden[1][t].data(), out.data(), model.node_count + 1, H);
    }
}

double step_loss_and_dout(const StepOutput& pred, int label_node, double label_share,
                          double share_weight, std::vector<double>* dout) {
    const int v = static_cast<int>(pred.node_logits.size());
    double max_logit = pred.node_logits[0];
    for (double l : pred.node_logits)
        max_logit = std::max(max_logit, l);
    double denom = 0.0;
    for (double l : pred.node_logits)
        denom += std::exp(l - max_logit);
    const double log_denom = std::log(denom) + max_logit;

    const double ce = log_denom - pred.node_logits[label_node];
    const double share_err = pred.share - label_share;
    const double value = ce + share_weight * share_err * share_err;

    if (dout) {
        for (int i = 0; i < v; ++i) {
            const double p = std::exp(pred.node_logits[i] - log_denom);
            (*dout)[i] = p - (i == label_node ? 1.0 : 0.0);
        }
        (*dout)[v] = 2.0 * share_weight * share_err * pred.share * (1.0 - pred.share);
    }
    return value;
}

std::vector<StepOutput> outputs_from_trace(const SurrogateModel& model, const Trace& trace) {
    std::vector<StepOutput> outputs(trace.steps);
    for (int t = 0; t < trace.steps; ++t) {
        outputs[t].node_logits.assign(trace.out[t].begin(), trace.out[t].end() - 1);
        outputs[t].share = sigmoid(trace.out[t].back());
    }
    return outputs;
}

std::vector<double> label_shares(const Scenario& scenario, const Solution& label) {
    std::vector<double> shares(label.assignment.size());
    for (std::size_t k = 0; k < label.assignment.size(); ++k)
        shares[k] = label.bandwidth[k] / scenario.nodes[label.assignment[k]].bandwidth_mhz;
    return shares;
}

} // namespace

Normalization Normalization::from_corpus(const std::vector<Scenario>& corpus) {
    if (corpus.empty())
        throw ConfigError("cannot derive normalization from an empty corpus");
    Normalization n;
    for (const Scenario& s : corpus) {
        for (const EdgeNode& node : s.nodes) {
            n.max_bandwidth_mhz = std::max(n.max_bandwidth_mhz, node.bandwidth_mhz);
            n.max_capacity_mhz = std::max(n.max_capacity_mhz, node.capacity_mhz);
        }
        for (const Request& r : s.requests) {
            n.max_size_mbit = std::max(n.max_size_mbit, r.size_mbit);
            n.max_demand_mhz = std::max(n.max_demand_mhz, r.demand_mhz);
            for (double d : r.distances_m)
                n.max_distance_m = std::max(n.max_distance_m, d);
        }
    }
    return n;
}

int feature_dim(int node_count) { return 2 + 3 * node_count; }

FeatureSequence featurize(const Scenario& scenario, const Normalization& norm) {
    if (!(norm.max_size_mbit > 0.0) || !(norm.max_demand_mhz > 0.0) ||
        !(norm.max_distance_m > 0.0) || !(norm.max_bandwidth_mhz > 0.0) ||
        !(norm.max_capacity_mhz > 0.0))
        throw ConfigError("normalization constants are unset; derive them from a corpus first");

    const auto squash = [](double x, double max) { return std::clamp(x / max, 0.0, 1.0); };
    const int v = scenario.node_count();
    FeatureSequence rows;
    rows.reserve(scenario.requests.size());
    for (const Request& r : scenario.requests) {
        std::vector<double> row;
        row.reserve(feature_dim(v));
        row.push_back(squash(r.size_mbit, norm.max_size_mbit));
        row.push_back(squash(r.demand_mhz, norm.max_demand_mhz));
        for (double d : r.distances_m)
            row.push_back(squash(d, norm.max_distance_m));
        for (const EdgeNode& node : scenario.nodes) {
            row.push_back(squash(node.bandwidth_mhz, norm.max_bandwidth_mhz));
            row.push_back(squash(node.capacity_mhz, norm.max_capacity_mhz));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

SurrogateModel make_model(int hidden, int node_count, const Normalization& norm) {
    if (hidden < 1 || node_count < 1)
        throw ConfigError("model needs positive hidden width and node count");
    SurrogateModel m;
    m.hidden = hidden;
    m.node_count = node_count;
    m.input_dim = feature_dim(node_count);
    m.norm = norm;
    m.params.assign(Layout(hidden, m.input_dim, node_count).total, 0.0);
    return m;
}

void init_params(SurrogateModel& model, Rng& rng) {
    for (double& p : model.params)
        p = rng.uniform(-0.2, 0.2);
    // Forget gates start open so early gradients reach across the sequence.
    const Layout lay = layout_of(model);
    for (int j = 0; j < model.hidden; ++j) {
        model.params[lay.b1 + model.hidden + j] += 1.0;
        model.params[lay.b2 + model.hidden + j] += 1.0;
    }
}

std::vector<StepOutput> forward(const SurrogateModel& model, const FeatureSequence& features) {
    Trace trace;
    run_forward(model, features, trace);
    return outputs_from_trace(model, trace);
}

Solution decode_with_repair(const Scenario& scenario, const std::vector<StepOutput>& outputs) {
    const int kcount = scenario.request_count();
    const int vcount = scenario.node_count();
    if (static_cast<int>(outputs.size()) != kcount)
        throw ConfigError("decode: output rows do not match the request count");

    Solution sol;
    sol.assignment.assign(kcount, -1);
    sol.bandwidth.assign(kcount, 1);

    // Hardest-to-pack first: descending demand, ties at the lower id.
    std::vector<int> order(kcount);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = scenario.requests[a].demand_mhz;
        const double db = scenario.requests[b].demand_mhz;
        return da != db ? da > db : a < b;
    });

    // Capacity test summed in request-id order, matching check_feasibility.
    const auto fits = [&](int node, int candidate) {
        double sum = 0.0;
        for (int k = 0; k < kcount; ++k)
            if (sol.assignment[k] == node || k == candidate)
                sum += scenario.requests[k].demand_mhz;
        return sum <= scenario.nodes[node].capacity_mhz;
    };

    std::vector<int> load(vcount, 0); // requests per node, for the >= 1 MHz floor
    for (int k : order) {
        std::vector<int> preference(vcount);
        std::iota(preference.begin(), preference.end(), 0);
        std::sort(preference.begin(), preference.end(), [&](int a, int b) {
            const double la = outputs[k].node_logits[a];
            const double lb = outputs[k].node_logits[b];
            return la != lb ? la > lb : a < b;
        });
        int chosen = -1;
        for (int v : preference) {
            if (static_cast<double>(load[v] + 1) > scenario.nodes[v].bandwidth_mhz)
                continue;
            if (fits(v, k)) {
                chosen = v;
                break;
            }
        }
        if (chosen < 0)
            throw InfeasibleDecodeError("decode: request " + std::to_string(k) +
                                            " fits no node with spare capacity",
                                        k);
        sol.assignment[k] = chosen;
        ++load[chosen];
    }

    // Per node: renormalize the raw shares to B_v and round to integers >= 1,
    // the slack going to the largest remainders (ties at the lower id).
    for (int v = 0; v < vcount; ++v) {
        std::vector<int> ids;
        for (int k = 0; k < kcount; ++k)
            if (sol.assignment[k] == v)
                ids.push_back(k);
        if (ids.empty())
            continue;
        const int budget = static_cast<int>(scenario.nodes[v].bandwidth_mhz);
        const int m = static_cast<int>(ids.size());
        if (budget < m)
            throw InfeasibleDecodeError("decode: node " + std::to_string(v) +
                                            " cannot give every request 1 MHz",
                                        ids.front());
        double share_sum = 0.0;
        for (int id : ids)
            share_sum += outputs[id].share;
        const int spare = budget - m;
        std::vector<double> remainder(m);
        int left = spare;
        for (int i = 0; i < m; ++i) {
            const double raw = outputs[ids[i]].share / share_sum * spare;
            const double base = std::floor(raw);
            sol.bandwidth[ids[i]] = 1 + static_cast<int>(base);
            remainder[i] = raw - base;
            left -= static_cast<int>(base);
        }
        std::vector<int> by_remainder(m);
        std::iota(by_remainder.begin(), by_remainder.end(), 0);
        std::sort(by_remainder.begin(), by_remainder.end(), [&](int a, int b) {
            return remainder[a] != remainder[b] ? remainder[a] > remainder[b]
                                                : ids[a] < ids[b];
        });
        for (int i = 0; i < left; ++i)
            ++sol.bandwidth[ids[by_remainder[i]]];
    }
    return sol;
}

double loss(const std::vector<StepOutput>& prediction, const Scenario& scenario,
            const Solution& label, double share_weight) {
    if (prediction.size() != label.assignment.size())
        throw ConfigError("loss: prediction and label lengths differ");
    const std::vector<double> shares = label_shares(scenario, label);
    double total = 0.0;
    for (std::size_t k = 0; k < prediction.size(); ++k)
        total += step_loss_and_dout(prediction[k], label.assignment[k], shares[k], share_weight,
                                    nullptr);
    return total;
}

double loss_and_gradient(const SurrogateModel& model, const FeatureSequence& features,
                         const Scenario& scenario, const Solution& label, double share_weight,
                         std::vector<double>& grad) {
    const Layout lay = layout_of(model);
    const int H = model.hidden;
    const int V = model.node_count;
    const int T = static_cast<int>(features.size());
    grad.assign(lay.total, 0.0);

    Trace trace;
    run_forward(model, features, trace);
    const std::vector<StepOutput> outputs = outputs_from_trace(model, trace);
    const std::vector<double> shares = label_shares(scenario, label);

    double total = 0.0;

    const double* p = model.params.data();
    double* g = grad.data();

    std::vector<double> dout(V + 1);
    std::vector<double> dh[2] = {std::vector<double>(H, 0.0), std::vector<double>(H, 0.0)};
    std::vector<double> dc[2] = {std::vector<double>(H, 0.0), std::vector<double>(H, 0.0)};
    std::vector<double> dz(4 * H);
    std::vector<double> dx(std::max(H, model.input_dim));

    for (int t = T - 1; t >= 0; --t) {
        total += step_loss_and_dout(outputs[t], label.assignment[t], shares[t], share_weight,
                                    &dout);

        // Head: out = W_out h2 + b_out.
        outer_acc(g + lay.wo, dout.data(), trace.hidden[1][t].data(), V + 1, H);
        for (int i = 0; i <= V; ++i)
            g[lay.bo + i] += dout[i];
        matvec_transpose_acc(p + lay.wo, dout.data(), dh[1].data(), V + 1, H);

        for (int l = 1; l >= 0; --l) {
            const std::vector<double>& z = trace.gates[l][t];
            const std::vector<double>& c = trace.cell[l][t];
            const std::vector<double>* c_prev = t > 0 ? &trace.cell[l][t - 1] : nullptr;
            const std::vector<double>* h_prev = t > 0 ? &trace.hidden[l][t - 1] : nullptr;

            for (int j = 0; j < H; ++j) {
                const double ig = z[j];
                const double fg = z[H + j];
                const double gg = z[2 * H + j];
                const double og = z[3 * H + j];
                const double tc = std::tanh(c[j]);
                const double dh_j = dh[l][j];
                const double dc_total = dc[l][j] + dh_j * og * (1.0 - tc * tc);
                const double cp = c_prev ? (*c_prev)[j] : 0.0;

                dz[j] = dc_total * gg * ig * (1.0 - ig);
                dz[H + j] = dc_total * cp * fg * (1.0 - fg);
                dz[2 * H + j] = dc_total * ig * (1.0 - gg * gg);
                dz[3 * H + j] = dh_j * tc * og * (1.0 - og);
                dc[l][j] = dc_total * fg; // flows to step t-1
            }

            const int in_dim = l == 0 ? model.input_dim : H;
            const double* in = l == 0 ? features[t].data() : trace.hidden[0][t].data();
            const std::size_t w_off = l == 0 ? lay.w1 : lay.w2;
            const std::size_t u_off = l == 0 ? lay.u1 : lay.u2;
            const std::size_t b_off = l == 0 ? lay.b1 : lay.b2;

            outer_acc(g + w_off, dz.data(), in, 4 * H, in_dim);
            if (h_prev)
                outer_acc(g + u_off, dz.data(), h_prev->data(), 4 * H, H);
            for (int j = 0; j < 4 * H; ++j)
                g[b_off + j] += dz[j];

            // dh for step t-1 of this layer; dx feeds the layer below.
            std::fill(dh[l].begin(), dh[l].end(), 0.0);
            matvec_transpose_acc(p + u_off, dz.data(), dh[l].data(), 4 * H, H);
            if (l == 1) {
                std::fill(dx.begin(), dx.begin() + H, 0.0);
                matvec_transpose_acc(p + lay.w2, dz.data(), dx.data(), 4 * H, H);
                for (int j = 0; j < H; ++j)
                    dh[0][j] += dx[j];
            }
        }
    }
    return total;
}

SurrogateModel train(const std::vector<Scenario>& corpus, const std::vector<Solution>& labels,
                     const TrainConfig& config) {
    if (corpus.empty())
        throw ConfigError("train: empty corpus");
    if (labels.size() != corpus.size())
        throw ConfigError("train: corpus and label counts differ");
    if (!(config.validation_fraction > 0.0) || config.validation_fraction > 0.5)
        throw ConfigError("train: validation fraction must lie in (0, 0.5]");
    if (config.epochs < 1 || config.batch_size < 1 || !(config.learning_rate > 0.0))
        throw ConfigError("train: epochs, batch size and learning rate must be positive");

    const int vcount = corpus.front().node_count();
    for (const Scenario& s : corpus)
        if (s.node_count() != vcount)
            throw ConfigError("train: corpus mixes node counts");

    const Normalization norm = Normalization::from_corpus(corpus);
    SurrogateModel model = make_model(config.hidden, vcount, norm);
    Rng rng(config.seed);
    init_params(model, rng);
    model.meta.corpus_seed = corpus.front().seed;
    model.meta.label_solver = config.label_solver;

    std::vector<FeatureSequence> features;
    features.reserve(corpus.size());
    for (const Scenario& s : corpus)
        features.push_back(featurize(s, norm));

    // Seeded split: shuffle once, validation takes the tail.
    const int n = static_cast<int>(corpus.size());
    std::vector<int> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(indices[i], indices[rng.index(i + 1)]);
    const int val_count = n > 1 ? std::max(1, static_cast<int>(n * config.validation_fraction)) : 0;
    std::vector<int> train_set(indices.begin(), indices.end() - val_count);
    std::vector<int> val_set(indices.end() - val_count, indices.end());

    std::vector<double> grad, batch_grad;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        for (int i = static_cast<int>(train_set.size()) - 1; i > 0; --i)
            std::swap(train_set[i], train_set[rng.index(i + 1)]);

        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < train_set.size(); start += config.batch_size) {
            const std::size_t end = std::min(train_set.size(),
                                             start + static_cast<std::size_t>(config.batch_size));
            batch_grad.assign(model.params.size(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t i = start; i < end; ++i) {
                const int idx = train_set[i];
                batch_loss += loss_and_gradient(model, features[idx], corpus[idx], labels[idx],
                                                config.share_weight, grad);
                for (std::size_t j = 0; j < grad.size(); ++j)
                    batch_grad[j] += grad[j];
            }
            const double scale = 1.0 / static_cast<double>(end - start);
            if (!std::isfinite(batch_loss))
                throw TrainingDivergedError("train: non-finite loss", epoch);
            for (std::size_t j = 0; j < model.params.size(); ++j)
                model.params[j] -= config.learning_rate * scale * batch_grad[j];
            epoch_loss += batch_loss * scale;
            ++batches;
        }
        model.meta.train_loss.push_back(epoch_loss / static_cast<double>(batches));

        double vloss = 0.0;
        for (int idx : val_set)
            vloss += loss(forward(model, features[idx]), corpus[idx], labels[idx],
                          config.share_weight);
        model.meta.val_loss.push_back(val_set.empty() ? 0.0
                                                      : vloss / static_cast<double>(val_set.size()));
    }
    return model;
}

double assignment_accuracy(const SurrogateModel& model, const std::vector<Scenario>& corpus,
                           const std::vector<Solution>& labels) {
    std::size_t hits = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const std::vector<StepOutput> outputs = forward(model, featurize(corpus[i], model.norm));
        for (std::size_t k = 0; k < outputs.size(); ++k) {
            const auto& logits = outputs[k].node_logits;
            const int pick = static_cast<int>(
                std::max_element(logits.begin(), logits.end()) - logits.begin());
            hits += pick == labels[i].assignment[k];
            ++total;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

SolverReport infer(const SurrogateModel& model, const Scenario& scenario) {
    const auto t0 = std::chrono::steady_clock::now();
    if (scenario.node_count() != model.node_count)
        throw ConfigError("infer: model was built for " + std::to_string(model.node_count) +
                          " nodes, scenario has " + std::to_string(scenario.node_count()));
    SolverReport report;
    report.solver = "surrogate";
    report.best = decode_with_repair(scenario, forward(model, featurize(scenario, model.norm)));
    report.delays = evaluate(scenario, report.best);
    report.objective_s = report.delays.sum_total_s;
    report.evaluations = 1;
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.curve.push_back({1, report.objective_s});
    return report;
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "model files are little-endian; add byte-swapping for this platform");

constexpr char kMagic[4] = {'E', 'S', 'M', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T take(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in)
        throw ModelFormatError("model file truncated");
    return value;
}

} // namespace

void save_model(const SurrogateModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path.string());
    out.write(kMagic, 4);
    put(out, kVersion);
    put(out, static_cast<std::uint32_t>(model.hidden));
    put(out, static_cast<std::uint32_t>(model.node_count));
    put(out, static_cast<std::uint32_t>(model.input_dim));
    put(out, model.norm.max_size_mbit);
    put(out, model.norm.max_demand_mhz);
    put(out, model.norm.max_distance_m);
    put(out, model.norm.max_bandwidth_mhz);
    put(out, model.norm.max_capacity_mhz);
    put(out, static_cast<std::uint64_t>(model.params.size()));
    out.write(reinterpret_cast<const char*>(model.params.data()),
              static_cast<std::streamsize>(model.params.size() * sizeof(double)));
    put(out, model.meta.corpus_seed);
    put(out, static_cast<std::uint32_t>(model.meta.label_solver.size()));
    out.write(model.meta.label_solver.data(),
              static_cast<std::streamsize>(model.meta.label_solver.size()));
    const auto put_curve = [&](const std::vector<double>& curve) {
        put(out, static_cast<std::uint64_t>(curve.size()));
        if (!curve.empty())
            out.write(reinterpret_cast<const char*>(curve.data()),
                      static_cast<std::streamsize>(curve.size() * sizeof(double)));
    };
    put_curve(model.meta.train_loss);
    put_curve(model.meta.val_loss);
    if (!out)
        throw ConfigError("write failed for " + path.string());
}

SurrogateModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw ModelFormatError("not a model file: bad magic");
    if (take<std::uint32_t>(in) != kVersion)
        throw ModelFormatError("unsupported model file version");

    SurrogateModel model;
    model.hidden = static_cast<int>(take<std::uint32_t>(in));
    model.node_count = static_cast<int>(take<std::uint32_t>(in));
    model.input_dim = static_cast<int>(take<std::uint32_t>(in));
    if (model.hidden < 1 || model.node_count < 1 ||
        model.input_dim != feature_dim(model.node_count))
        throw ModelFormatError("model header is inconsistent");
    model.norm.max_size_mbit = take<double>(in);
    model.norm.max_demand_mhz = take<double>(in);
    model.norm.max_distance_m = take<double>(in);
    model.norm.max_bandwidth_mhz = take<double>(in);
    model.norm.max_capacity_mhz = take<double>(in);

    const std::uint64_t count = take<std::uint64_t>(in);
    const Layout lay(model.hidden, model.input_dim, model.node_count);
    if (count != lay.total)
        throw ModelFormatError("parameter count does not match the model dimensions");
    model.params.resize(count);
    in.read(reinterpret_cast<char*>(model.params.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in)
        throw ModelFormatError("model file truncated");

    model.meta.corpus_seed = take<std::uint64_t>(in);
    const std::uint32_t label_len = take<std::uint32_t>(in);
    model.meta.label_solver.resize(label_len);
    in.read(model.meta.label_solver.data(), label_len);
    if (!in)
        throw ModelFormatError("model file truncated");
    const auto take_curve = [&](std::vector<double>& curve) {
        const std::uint64_t n = take<std::uint64_t>(in);
        curve.resize(n);
        if (n > 0)
            in.read(reinterpret_cast<char*>(curve.data()),
                    static_cast<std::streamsize>(n * sizeof(double)));
        if (!in)
            throw ModelFormatError("model file truncated");
    };
    take_curve(model.meta.train_loss);
    take_curve(model.meta.val_loss);
    return model;
}

} // namespace edgesched::surrogate
