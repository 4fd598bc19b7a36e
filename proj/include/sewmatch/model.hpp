#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sewmatch/encoding.hpp"
#include "sewmatch/errors.hpp"

namespace sewmatch {

enum class Aggregator { Mean, Max };

struct ModelConfig {
    int layers = 5;
    int hidden = 512;
    int embed_dim = 128;
    Aggregator aggregator = Aggregator::Mean;

    // Output width of layer l; the final layer emits the embedding.
    int layer_out(int l) const { return l == layers - 1 ? embed_dim : hidden; }
    int layer_in(int l) const { return l == 0 ? kEncodedDim : hidden; }
};

// Everything the optimizer updates: per-layer weights over the
// concatenation [self ; neighbor-aggregate], biases, and the dustbin score.
struct ModelParams {
    std::vector<Eigen::MatrixXd> w;  // (out x 2*in)
    std::vector<Eigen::VectorXd> b;  // (out)
    double z = 1.0;
};

struct LayerCache {
    Eigen::MatrixXd input;       // node states entering the layer
    Eigen::MatrixXd aggregated;  // neighbor aggregate
    Eigen::MatrixXd pre;         // pre-activation
};

struct ForwardCache {
    std::vector<LayerCache> layers;
};

struct ParamGrads {
    std::vector<Eigen::MatrixXd> w;
    std::vector<Eigen::VectorXd> b;
    double z = 0.0;
};

// Glorot-uniform weights (bound sqrt(6/(fan_in+fan_out))), zero biases,
// z = 1. Bit-deterministic for a given seed.
ModelParams init_params(const ModelConfig& cfg, std::uint64_t seed);

// One state update per layer: h' = relu(W [h ; agg(neighbors)] + b).
// Returns the M x D embedding matrix.
Eigen::MatrixXd forward(const StitchGraph& graph, const Eigen::MatrixXd& features,
                        const ModelConfig& cfg, const ModelParams& params, ForwardCache* cache);

// Exact reverse-mode gradients of the embeddings. Mean aggregation splits
// gradient evenly over the two ring neighbors; max routes it to the argmax
// entry (previous neighbor wins ties). Returns the gradient wrt the input
// features via `dfeatures` when non-null.
ParamGrads backward(const StitchGraph& graph, const ForwardCache& cache, const ModelConfig& cfg,
                    const ModelParams& params, const Eigen::MatrixXd& grad_embeddings,
                    Eigen::MatrixXd* dfeatures = nullptr);

ParamGrads zero_grads(const ModelConfig& cfg);

// Versioned JSON checkpoint carrying the model config, the feature slot
// layout tag, ablation switches, weights (row-major) and z. Loading rejects
// tag or version mismatches.
std::string checkpoint_to_json(const ModelConfig& cfg, const EncodeOptions& enc,
                               const ModelParams& params);
struct Checkpoint {
    ModelConfig config;
    EncodeOptions encode_options;
    ModelParams params;
};
Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint_file(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint_file(const std::string& path);

}  // namespace sewmatch
