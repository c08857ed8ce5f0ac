#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgesched/problem.hpp"
#include "edgesched/rng.hpp"
#include "edgesched/solver_report.hpp"

namespace edgesched::surrogate {

/// Corpus-wide maxima used to squash every feature into [0, 1]. They are
/// part of the model: inference must scale exactly like training did.
struct Normalization {
    double max_size_mbit = 0.0;
    double max_demand_mhz = 0.0;
    double max_distance_m = 0.0;
    double max_bandwidth_mhz = 0.0;
    double max_capacity_mhz = 0.0;

    static Normalization from_corpus(const std::vector<Scenario>& corpus);
};

// Per request, in id order:
//   [size, demand, distance to each node, (B_v, C_v) for each node]
// every entry normalized by the corpus maximum and clamped to [0, 1].
using FeatureSequence = std::vector<std::vector<double>>;

int feature_dim(int node_count); // 2 + 3 * node_count

// Throws ConfigError when any normalization constant is unset (<= 0).
FeatureSequence featurize(const Scenario& scenario, const Normalization& norm);

/// Raw per-request outputs: one logit per node plus a bandwidth share
/// in (0, 1) from the squashing output unit.
struct StepOutput {
    std::vector<double> node_logits;
    double share = 0.5;
};

struct TrainMeta {
    std::uint64_t corpus_seed = 0;
    std::string label_solver;
    std::vector<double> train_loss; // per epoch, mean batch loss
    std::vector<double> val_loss;   // per epoch
};

/// Two stacked recurrent layers (canonical four-gate cells) over the
/// request sequence, with a per-step linear head. Parameters live in one
/// flat blob; the layout is fixed by (hidden, input_dim, node_count).
struct SurrogateModel {
    int hidden = 64;
    int node_count = 0;
    int input_dim = 0;
    Normalization norm;
    std::vector<double> params;
    TrainMeta meta;
};

// Zero-initialized model of the right shape (uniform logits, share 0.5).
SurrogateModel make_model(int hidden, int node_count, const Normalization& norm);

// Uniform U(-0.2, 0.2) weights with forget-gate biases opened by +1.
void init_params(SurrogateModel& model, Rng& rng);

// Deterministic recurrent pass in request-id order.
std::vector<StepOutput> forward(const SurrogateModel& model, const FeatureSequence& features);

// Greedy feasible decode: requests in descending-demand order take their
// best-logit node with room for their demand; per node the shares are
// renormalized to B_v and rounded to integers >= 1 by largest remainder.
// Throws InfeasibleDecodeError when some request fits no node.
Solution decode_with_repair(const Scenario& scenario, const std::vector<StepOutput>& outputs);

// Sum over requests of: cross-entropy of the node choice plus
// share_weight * squared error of the bandwidth share against the label
// share b_k / B_v.
double loss(const std::vector<StepOutput>& prediction, const Scenario& scenario,
            const Solution& label, double share_weight = 1.0);

// Backprop twin of forward+loss: fills grad (same layout as model.params)
// and returns the loss. The unit tests check it against central finite
// differences parameter by parameter.
double loss_and_gradient(const SurrogateModel& model, const FeatureSequence& features,
                         const Scenario& scenario, const Solution& label, double share_weight,
                         std::vector<double>& grad);

struct TrainConfig {
    int epochs = 40;
    double learning_rate = 0.05;
    int batch_size = 8;
    double validation_fraction = 0.2;
    std::uint64_t seed = 0;
    int hidden = 64;
    double share_weight = 1.0;
    std::string label_solver = "evo";
    int dataset_size = 1000; // used by the pipeline when it generates the corpus
};

// Plain mini-batch SGD on the loss above; deterministic per seed. Throws
// ConfigError on an empty/mismatched corpus and TrainingDivergedError when
// the loss turns non-finite.
SurrogateModel train(const std::vector<Scenario>& corpus, const std::vector<Solution>& labels,
                     const TrainConfig& config);

// Fraction of requests whose best logit picks the label node.
double assignment_accuracy(const SurrogateModel& model, const std::vector<Scenario>& corpus,
                           const std::vector<Solution>& labels);

// featurize -> forward -> decode -> evaluate, wall time included. No search.
SolverReport infer(const SurrogateModel& model, const Scenario& scenario);

// Versioned little-endian binary blob; load checks the header against the
// parameter count and file size and throws ModelFormatError on mismatch.
void save_model(const SurrogateModel& model, const std::filesystem::path& path);
SurrogateModel load_model(const std::filesystem::path& path);

} // namespace edgesched::surrogate
