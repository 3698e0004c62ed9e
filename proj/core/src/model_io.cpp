#include "randlink/model_io.hpp"

#include <fstream>
#include <sstream>

#include "randlink/errors.hpp"
#include "randlink/report.hpp"
#include "randlink/textcodec.hpp"

namespace randlink {

namespace {

constexpr const char* kFormatTag = "randlink-model-1";

void put_matrix(KeyValueFile& kv, const std::string& prefix, const DenseMatrix& m) {
    kv.set(prefix + ".rows", std::to_string(m.rows()));
    kv.set(prefix + ".cols", std::to_string(m.cols()));
    kv.set(prefix + ".data", encode_matrix(m));
}

DenseMatrix get_matrix(const KeyValueFile& kv, const std::string& prefix) {
    auto rows = static_cast<Eigen::Index>(kv.get_int(prefix + ".rows"));
    auto cols = static_cast<Eigen::Index>(kv.get_int(prefix + ".cols"));
    if (rows < 1 || cols < 1)
        throw io_error(kv.origin() + ": " + prefix + ": bad shape");
    try {
        return decode_matrix(kv.get_string(prefix + ".data"), rows, cols);
    } catch (const io_error& e) {
        throw io_error(kv.origin() + ": " + prefix + ": " + e.what());
    }
}

void put_vector(KeyValueFile& kv, const std::string& prefix, const Vector& v) {
    kv.set(prefix + ".size", std::to_string(v.size()));
    kv.set(prefix + ".data", encode_vector(v));
}

Vector get_vector(const KeyValueFile& kv, const std::string& prefix) {
    auto size = static_cast<Eigen::Index>(kv.get_int(prefix + ".size"));
    if (size < 0) throw io_error(kv.origin() + ": " + prefix + ": bad size");
    try {
        return decode_vector(kv.get_string(prefix + ".data"), size);
    } catch (const io_error& e) {
        throw io_error(kv.origin() + ": " + prefix + ": " + e.what());
    }
}

void put_layer(KeyValueFile& kv, const std::string& prefix, const HiddenLayerParams& layer) {
    put_matrix(kv, prefix + ".weights", layer.weights);
    kv.set(prefix + ".has_bias", layer.biases.size() > 0 ? "true" : "false");
    if (layer.biases.size() > 0) put_vector(kv, prefix + ".biases", layer.biases);
    kv.set(prefix + ".activation", std::string(activation_name(layer.activation)));
}

HiddenLayerParams get_layer(const KeyValueFile& kv, const std::string& prefix) {
    HiddenLayerParams layer;
    layer.weights = get_matrix(kv, prefix + ".weights");
    if (kv.get_bool(prefix + ".has_bias", true))
        layer.biases = get_vector(kv, prefix + ".biases");
    layer.activation = parse_activation(kv.get_string(prefix + ".activation"));
    return layer;
}

void put_norm(KeyValueFile& kv, const std::string& prefix, const NormalizationParams& norm) {
    kv.set(prefix + ".method", std::string(norm_method_name(norm.method)));
    kv.set(prefix + ".fitted", norm.offset.size() > 0 ? "true" : "false");
    if (norm.offset.size() > 0) {
        put_vector(kv, prefix + ".offset", norm.offset);
        put_vector(kv, prefix + ".scale", norm.scale);
    }
}

NormalizationParams get_norm(const KeyValueFile& kv, const std::string& prefix) {
    NormalizationParams norm;
    norm.method = parse_norm_method(kv.get_string(prefix + ".method", "none"));
    if (kv.get_bool(prefix + ".fitted", false)) {
        norm.offset = get_vector(kv, prefix + ".offset");
        norm.scale = get_vector(kv, prefix + ".scale");
    }
    return norm;
}

void put_deep_body(KeyValueFile& kv, const std::string& prefix, const DeepModel& m) {
    kv.set(prefix + "layer_count", std::to_string(m.layers.size()));
    for (size_t l = 0; l < m.layers.size(); ++l)
        put_layer(kv, prefix + "layer." + std::to_string(l), m.layers[l]);
    put_matrix(kv, prefix + "beta", m.beta);
}

DeepModel get_deep_body(const KeyValueFile& kv, const std::string& prefix,
                        const NetworkConfig& cfg) {
    DeepModel m;
    m.config = cfg;
    auto layers = static_cast<size_t>(kv.get_int(prefix + "layer_count"));
    for (size_t l = 0; l < layers; ++l)
        m.layers.push_back(get_layer(kv, prefix + "layer." + std::to_string(l)));
    m.beta = get_matrix(kv, prefix + "beta");
    return m;
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    return out;
}

std::vector<std::string> split_names(const std::string& joined) {
    if (joined.empty()) return {};
    std::vector<std::string> out;
    std::string cur;
    for (char c : joined) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string serialize_model(const TrainedModel& model) {
    KeyValueFile kv;
    kv.set("format", kFormatTag);
    kv.set("method", std::string(method_name(model.spec.method)));
    kv.set("seed", std::to_string(model.spec.network.seed));
    kv.set("class_count", std::to_string(model_class_count(model)));
    kv.set("class_names", join_names(model_class_names(model)));
    CombineRule combine = std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, EnsembleDeepModel> || std::is_same_v<T, TrueEnsemble>)
                return m.combine;
            else
                return model.spec.combine;
        },
        model.model);
    kv.set("combine", std::string(combine_rule_name(combine)));
    kv.set("ensemble.members", std::to_string(model.spec.ensemble_members));
    kv.set("normalization", std::string(norm_method_name(model.spec.normalization)));

    const NetworkConfig& net = model.spec.network;
    kv.set("network.hidden_nodes", std::to_string(net.hidden_nodes));
    kv.set("network.layers", std::to_string(net.layers));
    kv.set("network.lambda", format_double(net.lambda));
    kv.set("network.direct_links", net.direct_links ? "true" : "false");
    kv.set("network.bias_in_output", net.bias_in_output ? "true" : "false");
    kv.set("network.hidden_bias", net.hidden_bias ? "true" : "false");
    kv.set("network.activation", std::string(activation_name(net.activation)));
    kv.set("network.weight_range",
           format_double(net.weight_range[0]) + "," + format_double(net.weight_range[1]));
    kv.set("network.bias_range",
           format_double(net.bias_range[0]) + "," + format_double(net.bias_range[1]));

    if (method_uses_fista(model.spec.method)) {
        kv.set("fista.l1_weight", format_double(model.spec.fista.l1_weight));
        kv.set("fista.max_iterations", std::to_string(model.spec.fista.max_iterations));
        kv.set("fista.tolerance", format_double(model.spec.fista.tolerance));
        kv.set("fista.step_size",
               model.spec.fista.step_size ? format_double(*model.spec.fista.step_size) : "auto");
    }

    put_norm(kv, "norm", model_normalization(model));

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ShallowModel>) {
                kv.set("model.kind", "shallow");
                put_layer(kv, "model.layer", m.layer);
                put_matrix(kv, "model.beta", m.beta);
            } else if constexpr (std::is_same_v<T, DeepModel>) {
                kv.set("model.kind", "deep");
                kv.set("model.layer_count", std::to_string(m.layers.size()));
                for (size_t l = 0; l < m.layers.size(); ++l)
                    put_layer(kv, "model.layer." + std::to_string(l), m.layers[l]);
                put_matrix(kv, "model.beta", m.beta);
            } else if constexpr (std::is_same_v<T, EnsembleDeepModel>) {
                kv.set("model.kind", "ensemble_deep");
                kv.set("model.layer_count", std::to_string(m.layers.size()));
                for (size_t l = 0; l < m.layers.size(); ++l) {
                    put_layer(kv, "model.layer." + std::to_string(l), m.layers[l]);
                    put_matrix(kv, "model.beta." + std::to_string(l), m.betas[l]);
                    kv.set("model.lambda." + std::to_string(l), format_double(m.lambdas[l]));
                }
            } else {
                kv.set("model.kind", "true_ensemble");
                kv.set("model.member_count", std::to_string(m.members.size()));
                for (size_t i = 0; i < m.members.size(); ++i) {
                    std::string p = "model.member." + std::to_string(i) + ".";
                    kv.set(p + "seed", std::to_string(m.members[i].config.seed));
                    KeyValueFile tmp;
                    put_deep_body(tmp, "", m.members[i]);
                    for (const auto& key : tmp.keys()) kv.set(p + key, tmp.get_string(key));
                }
            }
        },
        model.model);

    std::string body = render_key_value(kv);
    return body + "checksum = fnv1a:" + fnv1a64_hex(body) + "\n";
}

TrainedModel deserialize_model(const std::string& text, const std::string& origin) {
    // Split off the trailing checksum line and verify it over the exact bytes.
    size_t mark = text.rfind("checksum = fnv1a:");
    if (mark == std::string::npos || text.back() != '\n')
        throw io_error(origin + ": missing checksum line");
    std::string body = text.substr(0, mark);
    std::string checksum_line = text.substr(mark);
    std::string expected = "checksum = fnv1a:" + fnv1a64_hex(body) + "\n";
    if (checksum_line != expected)
        throw io_error(origin + ": checksum mismatch (file corrupted or edited)");

    KeyValueFile kv = KeyValueFile::parse_text(body, origin);
    if (kv.get_string("format", "") != kFormatTag)
        throw io_error(origin + ": not a model file (format tag missing)");

    TrainedModel model;
    model.spec.method = parse_method_id(kv.get_string("method"));
    model.spec.combine = parse_combine_rule(kv.get_string("combine", "vote"));
    model.spec.ensemble_members = static_cast<int>(kv.get_int("ensemble.members", 0));
    model.spec.normalization = parse_norm_method(kv.get_string("normalization", "minmax"));

    NetworkConfig& net = model.spec.network;
    net.seed = kv.get_uint("seed", 0);
    net.hidden_nodes = static_cast<int>(kv.get_int("network.hidden_nodes"));
    net.layers = static_cast<int>(kv.get_int("network.layers"));
    net.lambda = kv.get_double("network.lambda");
    net.direct_links = kv.get_bool("network.direct_links", true);
    net.bias_in_output = kv.get_bool("network.bias_in_output", false);
    net.hidden_bias = kv.get_bool("network.hidden_bias", true);
    net.activation = parse_activation(kv.get_string("network.activation", "sigmoid"));
    auto parse_pair_str = [&](const std::string& key, std::array<double, 2> fallback) {
        std::string s = kv.get_string(key, "");
        if (s.empty()) return fallback;
        size_t comma = s.find(',');
        if (comma == std::string::npos) throw io_error(origin + ": bad range in " + key);
        return std::array<double, 2>{parse_double_strict(std::string_view(s).substr(0, comma)),
                                     parse_double_strict(std::string_view(s).substr(comma + 1))};
    };
    net.weight_range = parse_pair_str("network.weight_range", {-1.0, 1.0});
    net.bias_range = parse_pair_str("network.bias_range", {0.0, 1.0});

    if (method_uses_fista(model.spec.method)) {
        model.spec.fista.l1_weight = kv.get_double("fista.l1_weight", 1.0);
        model.spec.fista.max_iterations =
            static_cast<int>(kv.get_int("fista.max_iterations", 500));
        model.spec.fista.tolerance = kv.get_double("fista.tolerance", 1e-6);
        if (std::string s = kv.get_string("fista.step_size", "auto"); s != "auto")
            model.spec.fista.step_size = parse_double_strict(s);
    }

    int class_count = static_cast<int>(kv.get_int("class_count"));
    std::vector<std::string> class_names = split_names(kv.get_string("class_names", ""));
    if (static_cast<int>(class_names.size()) != class_count) {
        class_names.clear();
        for (int i = 0; i < class_count; ++i) class_names.push_back(std::to_string(i));
    }
    NormalizationParams norm = get_norm(kv, "norm");

    std::string kind = kv.get_string("model.kind");
    if (kind == "shallow") {
        ShallowModel m;
        m.config = net;
        m.layer = get_layer(kv, "model.layer");
        m.beta = get_matrix(kv, "model.beta");
        m.norm = norm;
        m.class_count = class_count;
        m.class_names = class_names;
        model.model = std::move(m);
    } else if (kind == "deep") {
        DeepModel m = get_deep_body(kv, "model.", net);
        m.norm = norm;
        m.class_count = class_count;
        m.class_names = class_names;
        model.model = std::move(m);
    } else if (kind == "ensemble_deep") {
        EnsembleDeepModel m;
        m.config = net;
        m.combine = model.spec.combine;
        auto layers = static_cast<size_t>(kv.get_int("model.layer_count"));
        for (size_t l = 0; l < layers; ++l) {
            m.layers.push_back(get_layer(kv, "model.layer." + std::to_string(l)));
            m.betas.push_back(get_matrix(kv, "model.beta." + std::to_string(l)));
            m.lambdas.push_back(kv.get_double("model.lambda." + std::to_string(l)));
        }
        m.norm = norm;
        m.class_count = class_count;
        m.class_names = class_names;
        model.model = std::move(m);
    } else if (kind == "true_ensemble") {
        TrueEnsemble m;
        m.config = net;
        m.combine = model.spec.combine;
        auto members = static_cast<size_t>(kv.get_int("model.member_count"));
        for (size_t i = 0; i < members; ++i) {
            std::string p = "model.member." + std::to_string(i) + ".";
            NetworkConfig member_cfg = net;
            member_cfg.seed = kv.get_uint(p + "seed", 0);
            DeepModel member = get_deep_body(kv, p, member_cfg);
            member.class_count = class_count;
            member.class_names = class_names;
            m.members.push_back(std::move(member));
        }
        m.norm = norm;
        m.class_count = class_count;
        m.class_names = class_names;
        model.model = std::move(m);
    } else {
        throw io_error(origin + ": unknown model.kind '" + kind + "'");
    }
    return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
    write_text_file_atomic(path, serialize_model(model));
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open model file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str(), path);
}

} // namespace randlink
