#include "sewmatch/model.hpp"

#include <cmath>

#include <json.hpp>

#include "sewmatch/pattern_io.hpp"
#include "sewmatch/rng.hpp"

namespace sewmatch {

using nlohmann::json;

ModelParams init_params(const ModelConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    ModelParams p;
    p.w.reserve(static_cast<size_t>(cfg.layers));
    p.b.reserve(static_cast<size_t>(cfg.layers));
    for (int l = 0; l < cfg.layers; ++l) {
        const int in = 2 * cfg.layer_in(l);
        const int out = cfg.layer_out(l);
        const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
        Eigen::MatrixXd w(out, in);
        for (int r = 0; r < out; ++r)
            for (int c = 0; c < in; ++c) w(r, c) = rng.uniform(-bound, bound);
        p.w.push_back(std::move(w));
        p.b.push_back(Eigen::VectorXd::Zero(out));
    }
    p.z = 1.0;
    return p;
}

namespace {

Eigen::MatrixXd aggregate(const StitchGraph& graph, const Eigen::MatrixXd& h, Aggregator agg) {
    Eigen::MatrixXd a(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        const auto& nb = graph.neighbors[static_cast<size_t>(i)];
        if (agg == Aggregator::Mean)
            a.row(i) = 0.5 * (h.row(nb[0]) + h.row(nb[1]));
        else
            a.row(i) = h.row(nb[0]).cwiseMax(h.row(nb[1]));
    }
    return a;
}

void check_shapes(const StitchGraph& graph, const Eigen::MatrixXd& features, const ModelConfig& cfg,
                  const ModelParams& params) {
    if (features.rows() != graph.node_count || features.cols() != kEncodedDim)
        throw Error("feature matrix shape does not match the graph");
    if (static_cast<int>(params.w.size()) != cfg.layers ||
        static_cast<int>(params.b.size()) != cfg.layers)
        throw Error("parameter count does not match the model config");
    for (int l = 0; l < cfg.layers; ++l) {
        if (params.w[static_cast<size_t>(l)].rows() != cfg.layer_out(l) ||
            params.w[static_cast<size_t>(l)].cols() != 2 * cfg.layer_in(l) ||
            params.b[static_cast<size_t>(l)].size() != cfg.layer_out(l))
            throw Error("parameter tensor shape mismatch at layer " + std::to_string(l));
    }
}

}  // namespace

Eigen::MatrixXd forward(const StitchGraph& graph, const Eigen::MatrixXd& features,
                        const ModelConfig& cfg, const ModelParams& params, ForwardCache* cache) {
    check_shapes(graph, features, cfg, params);
    if (cache) {
        cache->layers.clear();
        cache->layers.reserve(static_cast<size_t>(cfg.layers));
    }

    Eigen::MatrixXd h = features;
    for (int l = 0; l < cfg.layers; ++l) {
        const Eigen::MatrixXd a = aggregate(graph, h, cfg.aggregator);
        const Eigen::Index in = h.cols();
        Eigen::MatrixXd z(h.rows(), 2 * in);
        z.leftCols(in) = h;
        z.rightCols(in) = a;
        Eigen::MatrixXd pre = z * params.w[static_cast<size_t>(l)].transpose();
        pre.rowwise() += params.b[static_cast<size_t>(l)].transpose();
        if (cache) cache->layers.push_back({std::move(h), a, pre});
        h = pre.cwiseMax(0.0);
    }
    return h;
}

ParamGrads zero_grads(const ModelConfig& cfg) {
    ParamGrads g;
    for (int l = 0; l < cfg.layers; ++l) {
        g.w.push_back(Eigen::MatrixXd::Zero(cfg.layer_out(l), 2 * cfg.layer_in(l)));
        g.b.push_back(Eigen::VectorXd::Zero(cfg.layer_out(l)));
    }
    return g;
}

ParamGrads backward(const StitchGraph& graph, const ForwardCache& cache, const ModelConfig& cfg,
                    const ModelParams& params, const Eigen::MatrixXd& grad_embeddings,
                    Eigen::MatrixXd* dfeatures) {
    ParamGrads grads = zero_grads(cfg);
    Eigen::MatrixXd g = grad_embeddings;

    for (int l = cfg.layers - 1; l >= 0; --l) {
        const LayerCache& lc = cache.layers[static_cast<size_t>(l)];
        const Eigen::Index in = lc.input.cols();
        const Eigen::Index m = lc.input.rows();

        const Eigen::MatrixXd dpre =
            (lc.pre.array() > 0.0).cast<double>().matrix().cwiseProduct(g);

        Eigen::MatrixXd z(m, 2 * in);
        z.leftCols(in) = lc.input;
        z.rightCols(in) = lc.aggregated;
        grads.w[static_cast<size_t>(l)] = dpre.transpose() * z;
        grads.b[static_cast<size_t>(l)] = dpre.colwise().sum().transpose();

        const Eigen::MatrixXd dz = dpre * params.w[static_cast<size_t>(l)];
        Eigen::MatrixXd dh = dz.leftCols(in);
        const Eigen::MatrixXd da = dz.rightCols(in);

        for (Eigen::Index i = 0; i < m; ++i) {
            const auto& nb = graph.neighbors[static_cast<size_t>(i)];
            if (cfg.aggregator == Aggregator::Mean) {
                dh.row(nb[0]) += 0.5 * da.row(i);
                dh.row(nb[1]) += 0.5 * da.row(i);
            } else {
                for (Eigen::Index c = 0; c < in; ++c) {
                    // Ties route to the first-listed (previous) neighbor.
                    if (lc.input(nb[0], c) >= lc.input(nb[1], c))
                        dh(nb[0], c) += da(i, c);
                    else
                        dh(nb[1], c) += da(i, c);
                }
            }
        }
        g = std::move(dh);
    }
    if (dfeatures) *dfeatures = std::move(g);
    return grads;
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw CheckpointError("malformed weight matrix");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[static_cast<size_t>(r)].size()) != cols)
            throw CheckpointError("ragged weight matrix");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = j[static_cast<size_t>(r)][static_cast<size_t>(c)].get<double>();
    }
    return m;
}

constexpr const char* kCheckpointFormat = "sewmatch-checkpoint";
constexpr int kCheckpointVersion = 1;

}  // namespace

std::string checkpoint_to_json(const ModelConfig& cfg, const EncodeOptions& enc,
                               const ModelParams& params) {
    json doc;
    doc["format"] = kCheckpointFormat;
    doc["version"] = kCheckpointVersion;
    doc["slot_layout"] = kSlotLayoutTag;
    doc["model"]["layers"] = cfg.layers;
    doc["model"]["hidden"] = cfg.hidden;
    doc["model"]["embed_dim"] = cfg.embed_dim;
    doc["model"]["aggregator"] = cfg.aggregator == Aggregator::Mean ? "mean" : "max";
    doc["features"]["use_panel_id"] = enc.use_panel_id;
    doc["features"]["use_topology"] = enc.use_topology;
    doc["dustbin_z"] = params.z;
    doc["weights"] = json::array();
    doc["biases"] = json::array();
    for (size_t l = 0; l < params.w.size(); ++l) {
        doc["weights"].push_back(matrix_to_json(params.w[l]));
        json bias = json::array();
        for (Eigen::Index i = 0; i < params.b[l].size(); ++i) bias.push_back(params.b[l](i));
        doc["biases"].push_back(std::move(bias));
    }
    return doc.dump(2) + "\n";
}

Checkpoint checkpoint_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CheckpointError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    if (!doc.contains("format") || doc["format"] != kCheckpointFormat)
        throw CheckpointError("not a model checkpoint");
    if (!doc.contains("version") || doc["version"] != kCheckpointVersion)
        throw CheckpointError("unsupported checkpoint version");
    if (!doc.contains("slot_layout") || doc["slot_layout"] != kSlotLayoutTag)
        throw CheckpointError("checkpoint feature slot layout does not match this build");

    Checkpoint out;
    try {
        out.config.layers = doc.at("model").at("layers").get<int>();
        out.config.hidden = doc.at("model").at("hidden").get<int>();
        out.config.embed_dim = doc.at("model").at("embed_dim").get<int>();
        const std::string agg = doc.at("model").at("aggregator").get<std::string>();
        if (agg == "mean")
            out.config.aggregator = Aggregator::Mean;
        else if (agg == "max")
            out.config.aggregator = Aggregator::Max;
        else
            throw CheckpointError("unknown aggregator '" + agg + "'");
        out.encode_options.use_panel_id = doc.at("features").at("use_panel_id").get<bool>();
        out.encode_options.use_topology = doc.at("features").at("use_topology").get<bool>();
        out.params.z = doc.at("dustbin_z").get<double>();
        for (const json& jw : doc.at("weights")) out.params.w.push_back(matrix_from_json(jw));
        for (const json& jb : doc.at("biases")) {
            Eigen::VectorXd b(static_cast<Eigen::Index>(jb.size()));
            for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = jb[static_cast<size_t>(i)].get<double>();
            out.params.b.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
    }

    if (static_cast<int>(out.params.w.size()) != out.config.layers ||
        static_cast<int>(out.params.b.size()) != out.config.layers)
        throw CheckpointError("checkpoint layer count mismatch");
    for (int l = 0; l < out.config.layers; ++l) {
        if (out.params.w[static_cast<size_t>(l)].rows() != out.config.layer_out(l) ||
            out.params.w[static_cast<size_t>(l)].cols() != 2 * out.config.layer_in(l))
            throw CheckpointError("checkpoint tensor shape mismatch at layer " + std::to_string(l));
    }
    return out;
}

void save_checkpoint_file(const Checkpoint& ckpt, const std::string& path) {
    write_file(path, checkpoint_to_json(ckpt.config, ckpt.encode_options, ckpt.params));
}

Checkpoint load_checkpoint_file(const std::string& path) {
    return checkpoint_from_json(read_file(path));
}

}  // namespace sewmatch
