#pragma once

#include <string_view>
#include <variant>

#include "randlink/ensemble.hpp"

namespace randlink {

enum class MethodId {
    Elm,
    Rvfl,
    SpRvfl,
    Drvfl,
    DrvflNoDl,
    Edrvfl,
    EdrvflNoDl,
    DspRvfl,
    EdspRvfl,
    Tedrvfl,
};

MethodId parse_method_id(std::string_view name);
std::string_view method_name(MethodId id);
bool method_is_deep(MethodId id);
bool method_uses_fista(MethodId id);

struct MethodSpec {
    MethodId method = MethodId::Rvfl;
    NetworkConfig network;
    FistaConfig fista;
    CombineRule combine = CombineRule::MajorityVote;
    int ensemble_members = 0; // tedrvfl; 0 means "one per layer"
    NormMethod normalization = NormMethod::MinMax;
};

/// Network config with the method's structural flags applied: elm drops
/// direct links and the output bias column, the -no-dl variants swap direct
/// links for the bias column, shallow methods force layers = 1.
NetworkConfig effective_network(const MethodSpec& spec);

using AnyModel = std::variant<ShallowModel, DeepModel, EnsembleDeepModel, TrueEnsemble>;

struct TrainedModel {
    MethodSpec spec;         // with effective_network applied
    AnyModel model;
};

/// Trains on ds.features as given (callers normalize first; see
/// set_model_normalization for attaching fold statistics).
TrainedModel train_method(const MethodSpec& spec, const Dataset& ds);

PredictResult predict_method(const TrainedModel& model, const DenseMatrix& X);

void set_model_normalization(TrainedModel& model, const NormalizationParams& params);
const NormalizationParams& model_normalization(const TrainedModel& model);
int model_class_count(const TrainedModel& model);
const std::vector<std::string>& model_class_names(const TrainedModel& model);

} // namespace randlink
