#include "randlink/ensemble.hpp"

#include <algorithm>
#include <string>

#include "randlink/errors.hpp"
#include "randlink/parallel.hpp"

namespace randlink {

CombineRule parse_combine_rule(std::string_view name) {
    if (name == "vote" || name == "majority_vote") return CombineRule::MajorityVote;
    if (name == "average" || name == "score_average") return CombineRule::ScoreAverage;
    throw usage_error("unknown combine rule: " + std::string(name));
}

std::string_view combine_rule_name(CombineRule rule) {
    return rule == CombineRule::MajorityVote ? "vote" : "average";
}

std::vector<DenseMatrix> forward_stack_entangled(const DenseMatrix& X,
                                                 const std::vector<HiddenLayerParams>& layers,
                                                 bool direct_links) {
    std::vector<DenseMatrix> hidden;
    hidden.reserve(layers.size());
    for (size_t l = 0; l < layers.size(); ++l) {
        const DenseMatrix* input;
        DenseMatrix stacked;
        if (l == 0) {
            input = &X;
        } else if (direct_links) {
            stacked = hstack({&hidden.back(), &X});
            input = &stacked;
        } else {
            input = &hidden.back();
        }
        hidden.push_back(hidden_output(*input, layers[l]));
    }
    return hidden;
}

static EnsembleDeepModel finish_ensemble(const Dataset& ds, const NetworkConfig& cfg,
                                         std::vector<HiddenLayerParams> layers,
                                         const std::vector<double>& lambdas) {
    EnsembleDeepModel model;
    model.config = cfg;
    model.class_count = ds.class_count;
    model.class_names = ds.class_names;
    model.lambdas = lambdas;

    std::vector<DenseMatrix> hidden = forward_stack_entangled(ds.features, layers, cfg.direct_links);
    model.layers = std::move(layers);
    DenseMatrix Y = one_hot(ds.labels, ds.class_count);
    model.betas.resize(hidden.size());
    parallel_for(static_cast<int>(hidden.size()), [&](int l) {
        DenseMatrix D = assemble_design({&hidden[static_cast<size_t>(l)]}, ds.features,
                                        cfg.direct_links, cfg.bias_in_output);
        model.betas[static_cast<size_t>(l)] =
            solve_output_weights(D, Y, lambdas[static_cast<size_t>(l)]);
    });
    return model;
}

static std::vector<HiddenLayerParams> entangled_random_layers(const Dataset& ds,
                                                              const NetworkConfig& cfg) {
    Rng rng(cfg.seed);
    std::vector<HiddenLayerParams> layers;
    layers.reserve(static_cast<size_t>(cfg.layers));
    int d = static_cast<int>(ds.cols());
    for (int l = 0; l < cfg.layers; ++l) {
        int width = l == 0 ? d : (cfg.direct_links ? cfg.hidden_nodes + d : cfg.hidden_nodes);
        layers.push_back(random_layer_from(rng, width, cfg.hidden_nodes, cfg));
    }
    return layers;
}

EnsembleDeepModel train_edrvfl(const Dataset& ds, const NetworkConfig& cfg) {
    return train_edrvfl(ds, cfg, std::vector<double>(static_cast<size_t>(cfg.layers), cfg.lambda));
}

EnsembleDeepModel train_edrvfl(const Dataset& ds, const NetworkConfig& cfg,
                               const std::vector<double>& per_layer_lambda) {
    validate_config(cfg);
    if (ds.rows() == 0) throw std::invalid_argument("train_edrvfl: empty dataset");
    if (per_layer_lambda.size() != static_cast<size_t>(cfg.layers))
        throw std::invalid_argument("train_edrvfl: need one lambda per layer");
    for (double lam : per_layer_lambda)
        if (!(lam >= 0.0)) throw std::invalid_argument("train_edrvfl: lambda must be >= 0");
    EnsembleDeepModel model =
        finish_ensemble(ds, cfg, entangled_random_layers(ds, cfg), per_layer_lambda);
    model.combine = CombineRule::MajorityVote;
    return model;
}

EnsembleDeepModel train_edsp_rvfl(const Dataset& ds, const NetworkConfig& cfg,
                                  const FistaConfig& fcfg) {
    validate_config(cfg);
    if (ds.rows() == 0) throw std::invalid_argument("train_edsp_rvfl: empty dataset");
    Rng rng(cfg.seed);
    std::vector<HiddenLayerParams> layers;
    layers.reserve(static_cast<size_t>(cfg.layers));
    DenseMatrix input = ds.features;
    for (int l = 0; l < cfg.layers; ++l) {
        layers.push_back(sparse_pretrain_layer(input, cfg.hidden_nodes, rng, cfg, fcfg));
        DenseMatrix h = hidden_output(input, layers.back());
        input = cfg.direct_links ? hstack({&h, &ds.features}) : std::move(h);
    }
    EnsembleDeepModel model = finish_ensemble(
        ds, cfg, std::move(layers), std::vector<double>(static_cast<size_t>(cfg.layers), cfg.lambda));
    model.combine = CombineRule::MajorityVote;
    return model;
}

std::vector<DenseMatrix> member_scores(const EnsembleDeepModel& model, const DenseMatrix& X) {
    DenseMatrix Xn = apply_normalization(X, model.norm);
    if (model.layers.empty()) throw std::invalid_argument("member_scores: model has no layers");
    if (Xn.cols() != model.layers.front().input_width())
        throw std::invalid_argument("member_scores: feature width mismatch");
    std::vector<DenseMatrix> hidden =
        forward_stack_entangled(Xn, model.layers, model.config.direct_links);
    std::vector<DenseMatrix> scores(hidden.size());
    for (size_t l = 0; l < hidden.size(); ++l) {
        DenseMatrix D = assemble_design({&hidden[l]}, Xn, model.config.direct_links,
                                        model.config.bias_in_output);
        scores[l] = D * model.betas[l];
    }
    return scores;
}

EnsemblePrediction combine_member_scores(const std::vector<DenseMatrix>& scores,
                                         CombineRule rule) {
    if (scores.empty()) throw std::invalid_argument("combine_member_scores: no members");
    Eigen::Index T = scores.front().rows();
    Eigen::Index K = scores.front().cols();
    for (const auto& s : scores)
        if (s.rows() != T || s.cols() != K)
            throw std::invalid_argument("combine_member_scores: member score shapes differ");

    EnsemblePrediction out;
    out.member_scores = scores;
    out.mean_scores = DenseMatrix::Zero(T, K);
    for (const auto& s : scores) out.mean_scores += s;
    out.mean_scores /= static_cast<double>(scores.size());

    if (rule == CombineRule::ScoreAverage) {
        out.labels = argmax_rows(out.mean_scores);
        return out;
    }

    out.labels.resize(static_cast<size_t>(T));
    for (Eigen::Index r = 0; r < T; ++r) {
        std::vector<int> votes(static_cast<size_t>(K), 0);
        for (const auto& s : scores) {
            int best = 0;
            for (Eigen::Index c = 1; c < K; ++c)
                if (s(r, c) > s(r, best)) best = static_cast<int>(c);
            ++votes[static_cast<size_t>(best)];
        }
        int top = *std::max_element(votes.begin(), votes.end());
        int winner = -1;
        double winner_mean = 0.0;
        for (int c = 0; c < static_cast<int>(K); ++c) {
            if (votes[static_cast<size_t>(c)] != top) continue;
            double mean = out.mean_scores(r, c);
            if (winner < 0 || mean > winner_mean) {
                winner = c;
                winner_mean = mean;
            }
        }
        out.labels[static_cast<size_t>(r)] = winner;
    }
    return out;
}

EnsemblePrediction ensemble_predict(const EnsembleDeepModel& model, const DenseMatrix& X,
                                    CombineRule rule) {
    return combine_member_scores(member_scores(model, X), rule);
}

EnsemblePrediction ensemble_predict(const EnsembleDeepModel& model, const DenseMatrix& X) {
    return ensemble_predict(model, X, model.combine);
}

TrueEnsemble train_tedrvfl(const Dataset& ds, const NetworkConfig& cfg, int member_count,
                           std::uint64_t base_seed) {
    validate_config(cfg);
    if (member_count < 1) throw std::invalid_argument("train_tedrvfl: member_count must be >= 1");
    if (ds.rows() == 0) throw std::invalid_argument("train_tedrvfl: empty dataset");
    TrueEnsemble ensemble;
    ensemble.config = cfg;
    ensemble.config.seed = base_seed;
    ensemble.class_count = ds.class_count;
    ensemble.class_names = ds.class_names;
    ensemble.members.resize(static_cast<size_t>(member_count));
    parallel_for(member_count, [&](int i) {
        NetworkConfig member_cfg = cfg;
        member_cfg.seed = base_seed + static_cast<std::uint64_t>(i);
        ensemble.members[static_cast<size_t>(i)] = train_drvfl(ds, member_cfg);
    });
    return ensemble;
}

EnsemblePrediction predict_true_ensemble(const TrueEnsemble& model, const DenseMatrix& X) {
    if (model.members.empty()) throw std::invalid_argument("predict_true_ensemble: no members");
    DenseMatrix Xn = apply_normalization(X, model.norm);
    std::vector<DenseMatrix> scores;
    scores.reserve(model.members.size());
    for (const auto& member : model.members)
        scores.push_back(predict_deep(member, Xn).scores);
    return combine_member_scores(scores, model.combine);
}

} // namespace randlink
