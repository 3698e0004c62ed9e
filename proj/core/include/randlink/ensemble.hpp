#pragma once

#include <string_view>

#include "randlink/deep.hpp"

namespace randlink {

enum class CombineRule { MajorityVote, ScoreAverage };

CombineRule parse_combine_rule(std::string_view name);
std::string_view combine_rule_name(CombineRule rule);

/// One forward pass, one independently solved output block per layer.
struct EnsembleDeepModel {
    std::vector<HiddenLayerParams> layers;
    std::vector<DenseMatrix> betas;   // betas[l] pairs with [H_l X] (or [H_l 1])
    std::vector<double> lambdas;      // per-layer ridge weights used for the solves
    CombineRule combine = CombineRule::MajorityVote;
    NetworkConfig config;
    NormalizationParams norm;
    int class_count = 0;
    std::vector<std::string> class_names;
};

/// Independently trained deep models, distinct seeds.
struct TrueEnsemble {
    std::vector<DeepModel> members;
    CombineRule combine = CombineRule::ScoreAverage;
    NetworkConfig config;
    NormalizationParams norm;
    int class_count = 0;
    std::vector<std::string> class_names;
};

struct EnsemblePrediction {
    std::vector<int> labels;
    std::vector<DenseMatrix> member_scores;
    DenseMatrix mean_scores;
};

/// Entangled recursion: H1 = g(X W1 + b1); for l > 1 the input is
/// [H(l-1) X] (or H(l-1) alone without direct links).
std::vector<DenseMatrix> forward_stack_entangled(const DenseMatrix& X,
                                                 const std::vector<HiddenLayerParams>& layers,
                                                 bool direct_links);

EnsembleDeepModel train_edrvfl(const Dataset& ds, const NetworkConfig& cfg);
EnsembleDeepModel train_edrvfl(const Dataset& ds, const NetworkConfig& cfg,
                               const std::vector<double>& per_layer_lambda);
EnsembleDeepModel train_edsp_rvfl(const Dataset& ds, const NetworkConfig& cfg,
                                  const FistaConfig& fcfg);

std::vector<DenseMatrix> member_scores(const EnsembleDeepModel& model, const DenseMatrix& X);

/// Shared vote/average math. Vote ties: highest mean score among the tied
/// classes, then lowest class index.
EnsemblePrediction combine_member_scores(const std::vector<DenseMatrix>& scores,
                                         CombineRule rule);

EnsemblePrediction ensemble_predict(const EnsembleDeepModel& model, const DenseMatrix& X,
                                    CombineRule rule);
EnsemblePrediction ensemble_predict(const EnsembleDeepModel& model, const DenseMatrix& X);

TrueEnsemble train_tedrvfl(const Dataset& ds, const NetworkConfig& cfg, int member_count,
                           std::uint64_t base_seed);

EnsemblePrediction predict_true_ensemble(const TrueEnsemble& model, const DenseMatrix& X);

} // namespace randlink
