#include "randlink/method.hpp"

#include <string>

#include "randlink/errors.hpp"

namespace randlink {

MethodId parse_method_id(std::string_view name) {
    if (name == "elm") return MethodId::Elm;
    if (name == "rvfl") return MethodId::Rvfl;
    if (name == "sp-rvfl") return MethodId::SpRvfl;
    if (name == "drvfl") return MethodId::Drvfl;
    if (name == "drvfl-no-dl") return MethodId::DrvflNoDl;
    if (name == "edrvfl") return MethodId::Edrvfl;
    if (name == "edrvfl-no-dl") return MethodId::EdrvflNoDl;
    if (name == "dsp-rvfl") return MethodId::DspRvfl;
    if (name == "edsp-rvfl") return MethodId::EdspRvfl;
    if (name == "tedrvfl") return MethodId::Tedrvfl;
    throw usage_error("unknown method id: " + std::string(name));
}

std::string_view method_name(MethodId id) {
    switch (id) {
    case MethodId::Elm: return "elm";
    case MethodId::Rvfl: return "rvfl";
    case MethodId::SpRvfl: return "sp-rvfl";
    case MethodId::Drvfl: return "drvfl";
    case MethodId::DrvflNoDl: return "drvfl-no-dl";
    case MethodId::Edrvfl: return "edrvfl";
    case MethodId::EdrvflNoDl: return "edrvfl-no-dl";
    case MethodId::DspRvfl: return "dsp-rvfl";
    case MethodId::EdspRvfl: return "edsp-rvfl";
    case MethodId::Tedrvfl: return "tedrvfl";
    }
    return "rvfl";
}

bool method_is_deep(MethodId id) {
    switch (id) {
    case MethodId::Elm:
    case MethodId::Rvfl:
    case MethodId::SpRvfl:
        return false;
    default:
        return true;
    }
}

bool method_uses_fista(MethodId id) {
    return id == MethodId::SpRvfl || id == MethodId::DspRvfl || id == MethodId::EdspRvfl;
}

NetworkConfig effective_network(const MethodSpec& spec) {
    NetworkConfig cfg = spec.network;
    switch (spec.method) {
    case MethodId::Elm:
        cfg.direct_links = false;
        cfg.bias_in_output = false;
        cfg.layers = 1;
        break;
    case MethodId::Rvfl:
    case MethodId::SpRvfl:
        cfg.direct_links = true;
        cfg.layers = 1;
        break;
    case MethodId::Drvfl:
    case MethodId::Edrvfl:
    case MethodId::DspRvfl:
    case MethodId::EdspRvfl:
    case MethodId::Tedrvfl:
        cfg.direct_links = true;
        break;
    case MethodId::DrvflNoDl:
    case MethodId::EdrvflNoDl:
        cfg.direct_links = false;
        cfg.bias_in_output = true;
        break;
    }
    return cfg;
}

TrainedModel train_method(const MethodSpec& spec, const Dataset& ds) {
    TrainedModel out;
    out.spec = spec;
    out.spec.network = effective_network(spec);
    const NetworkConfig& cfg = out.spec.network;
    switch (spec.method) {
    case MethodId::Elm:
        out.model = train_elm(ds, cfg);
        break;
    case MethodId::Rvfl:
        out.model = train_rvfl(ds, cfg);
        break;
    case MethodId::SpRvfl:
        out.model = train_sp_rvfl(ds, cfg, spec.fista);
        break;
    case MethodId::Drvfl:
    case MethodId::DrvflNoDl:
        out.model = train_drvfl(ds, cfg);
        break;
    case MethodId::Edrvfl:
    case MethodId::EdrvflNoDl: {
        EnsembleDeepModel m = train_edrvfl(ds, cfg);
        m.combine = spec.combine;
        out.model = std::move(m);
        break;
    }
    case MethodId::DspRvfl:
        out.model = train_dsp_rvfl(ds, cfg, spec.fista);
        break;
    case MethodId::EdspRvfl: {
        EnsembleDeepModel m = train_edsp_rvfl(ds, cfg, spec.fista);
        m.combine = spec.combine;
        out.model = std::move(m);
        break;
    }
    case MethodId::Tedrvfl: {
        int members = spec.ensemble_members > 0 ? spec.ensemble_members : cfg.layers;
        out.model = train_tedrvfl(ds, cfg, members, cfg.seed);
        break;
    }
    }
    return out;
}

PredictResult predict_method(const TrainedModel& model, const DenseMatrix& X) {
    return std::visit(
        [&](const auto& m) -> PredictResult {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ShallowModel>) {
                return predict(m, X);
            } else if constexpr (std::is_same_v<T, DeepModel>) {
                return predict_deep(m, X);
            } else if constexpr (std::is_same_v<T, EnsembleDeepModel>) {
                EnsemblePrediction p = ensemble_predict(m, X);
                return PredictResult{std::move(p.labels), std::move(p.mean_scores)};
            } else {
                EnsemblePrediction p = predict_true_ensemble(m, X);
                return PredictResult{std::move(p.labels), std::move(p.mean_scores)};
            }
        },
        model.model);
}

void set_model_normalization(TrainedModel& model, const NormalizationParams& params) {
    std::visit([&](auto& m) { m.norm = params; }, model.model);
}

const NormalizationParams& model_normalization(const TrainedModel& model) {
    return std::visit([](const auto& m) -> const NormalizationParams& { return m.norm; },
                      model.model);
}

int model_class_count(const TrainedModel& model) {
    return std::visit([](const auto& m) { return m.class_count; }, model.model);
}

const std::vector<std::string>& model_class_names(const TrainedModel& model) {
    return std::visit(
        [](const auto& m) -> const std::vector<std::string>& { return m.class_names; },
        model.model);
}

} // namespace randlink
