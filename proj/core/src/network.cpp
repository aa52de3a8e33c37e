#include "narcast/network.hpp"

#include "narcast/errors.hpp"
#include "narcast/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace narcast {

namespace {

constexpr int kModelFormatVersion = 1;

void require_differentiable(const NarNetwork& net) {
    if (net.hidden_activation == Activation::UnitStep ||
        net.output_activation == Activation::UnitStep) {
        throw InputError("unit-step activation is not differentiable");
    }
}

void check_lags(const NarNetwork& net, std::span<const double> lags) {
    if (static_cast<int>(lags.size()) != net.delays) {
        throw InputError("lag vector length " + std::to_string(lags.size()) +
                         " does not match network delay count " + std::to_string(net.delays));
    }
    for (double x : lags) {
        if (!std::isfinite(x)) {
            throw InputError("non-finite lag input");
        }
    }
}

} // namespace

double apply_activation(Activation a, double x) {
    switch (a) {
        case Activation::Tanh: return std::tanh(x);
        case Activation::Linear: return x;
        case Activation::UnitStep: return x >= 0.0 ? 1.0 : 0.0;
    }
    throw InputError("unknown activation");
}

double activation_derivative(Activation a, double x) {
    switch (a) {
        case Activation::Tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case Activation::Linear: return 1.0;
        case Activation::UnitStep:
            throw InputError("unit-step activation is not differentiable");
    }
    throw InputError("unknown activation");
}

std::string to_string(Activation a) {
    switch (a) {
        case Activation::Tanh: return "tanh";
        case Activation::Linear: return "linear";
        case Activation::UnitStep: return "unit-step";
    }
    throw InputError("unknown activation");
}

Activation activation_from_string(const std::string& name) {
    if (name == "tanh") return Activation::Tanh;
    if (name == "linear") return Activation::Linear;
    if (name == "unit-step") return Activation::UnitStep;
    throw InputError("unknown activation name '" + name + "'");
}

NormParams NormParams::from_values(std::span<const double> values) {
    if (values.empty()) {
        throw InputError("cannot derive normalization bounds from an empty range");
    }
    double lo = values[0];
    double hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo < hi)) {
        throw InputError("degenerate normalization range: all values equal " + std::to_string(lo));
    }
    return NormParams{lo, hi};
}

double NormParams::normalize(double raw) const {
    return 2.0 * (raw - raw_min) / (raw_max - raw_min) - 1.0;
}

double NormParams::denormalize(double scaled) const {
    return raw_min + (scaled + 1.0) * 0.5 * (raw_max - raw_min);
}

NarNetwork init_network(int delays, int hidden, std::uint64_t seed) {
    if (delays < 1 || hidden < 1) {
        throw InputError("network sizes must be positive (delays=" + std::to_string(delays) +
                         ", hidden=" + std::to_string(hidden) + ")");
    }
    NarNetwork net;
    net.delays = delays;
    net.hidden = hidden;
    Rng rng(seed);
    net.input_weights.resize(static_cast<std::size_t>(hidden) * delays);
    net.hidden_biases.resize(static_cast<std::size_t>(hidden));
    net.output_weights.resize(static_cast<std::size_t>(hidden));
    for (double& w : net.input_weights) w = rng.uniform(-0.5, 0.5);
    for (double& b : net.hidden_biases) b = rng.uniform(-0.5, 0.5);
    for (double& w : net.output_weights) w = rng.uniform(-0.5, 0.5);
    net.output_bias = rng.uniform(-0.5, 0.5);
    return net;
}

double forward(const NarNetwork& net, std::span<const double> lags) {
    check_lags(net, lags);
    double out_pre = net.output_bias;
    for (int k = 0; k < net.hidden; ++k) {
        double pre = net.hidden_biases[static_cast<std::size_t>(k)];
        const double* row = net.input_weights.data() + static_cast<std::size_t>(k) * net.delays;
        for (int j = 0; j < net.delays; ++j) {
            pre += row[j] * lags[static_cast<std::size_t>(j)];
        }
        out_pre += net.output_weights[static_cast<std::size_t>(k)] *
                   apply_activation(net.hidden_activation, pre);
    }
    return apply_activation(net.output_activation, out_pre);
}

std::vector<double> output_gradient(const NarNetwork& net, std::span<const double> lags) {
    require_differentiable(net);
    check_lags(net, lags);

    const auto h = static_cast<std::size_t>(net.hidden);
    const auto d = static_cast<std::size_t>(net.delays);
    std::vector<double> pre(h);
    std::vector<double> act(h);
    double out_pre = net.output_bias;
    for (std::size_t k = 0; k < h; ++k) {
        double s = net.hidden_biases[k];
        const double* row = net.input_weights.data() + k * d;
        for (std::size_t j = 0; j < d; ++j) {
            s += row[j] * lags[j];
        }
        pre[k] = s;
        act[k] = apply_activation(net.hidden_activation, s);
        out_pre += net.output_weights[k] * act[k];
    }
    const double out_slope = activation_derivative(net.output_activation, out_pre);

    std::vector<double> grad(static_cast<std::size_t>(net.parameter_count()));
    std::size_t at = 0;
    for (std::size_t k = 0; k < h; ++k) {
        const double chain =
            out_slope * net.output_weights[k] * activation_derivative(net.hidden_activation, pre[k]);
        for (std::size_t j = 0; j < d; ++j) {
            grad[at++] = chain * lags[j];
        }
    }
    for (std::size_t k = 0; k < h; ++k) {
        grad[at++] = out_slope * net.output_weights[k] *
                     activation_derivative(net.hidden_activation, pre[k]);
    }
    for (std::size_t k = 0; k < h; ++k) {
        grad[at++] = out_slope * act[k];
    }
    grad[at] = out_slope;
    return grad;
}

std::vector<double> parameter_gradient(const NarNetwork& net, std::span<const double> lags,
                                       double target) {
    std::vector<double> grad = output_gradient(net, lags);
    const double error = forward(net, lags) - target;
    for (double& g : grad) g *= error;
    return grad;
}

std::vector<double> flatten_parameters(const NarNetwork& net) {
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(net.parameter_count()));
    params.insert(params.end(), net.input_weights.begin(), net.input_weights.end());
    params.insert(params.end(), net.hidden_biases.begin(), net.hidden_biases.end());
    params.insert(params.end(), net.output_weights.begin(), net.output_weights.end());
    params.push_back(net.output_bias);
    return params;
}

void set_parameters(NarNetwork& net, std::span<const double> params) {
    if (static_cast<int>(params.size()) != net.parameter_count()) {
        throw InputError("parameter vector length mismatch");
    }
    std::size_t at = 0;
    for (double& w : net.input_weights) w = params[at++];
    for (double& b : net.hidden_biases) b = params[at++];
    for (double& w : net.output_weights) w = params[at++];
    net.output_bias = params[at];
}

std::string network_to_json(const NarNetwork& net) {
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k < net.hidden; ++k) {
        const auto* begin = net.input_weights.data() + static_cast<std::size_t>(k) * net.delays;
        rows.push_back(std::vector<double>(begin, begin + net.delays));
    }
    const nlohmann::json doc = {
        {"version", kModelFormatVersion},
        {"delays", net.delays},
        {"hidden", net.hidden},
        {"input_weights", rows},
        {"hidden_biases", net.hidden_biases},
        {"output_weights", net.output_weights},
        {"output_bias", net.output_bias},
        {"hidden_activation", to_string(net.hidden_activation)},
        {"output_activation", to_string(net.output_activation)},
        {"norm", {{"raw_min", net.norm.raw_min}, {"raw_max", net.norm.raw_max}}},
    };
    return doc.dump(2);
}

NarNetwork network_from_json(const std::string& document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed model document: ") + e.what());
    }
    try {
        const int version = doc.at("version").get<int>();
        if (version != kModelFormatVersion) {
            throw IoError("unsupported model format version " + std::to_string(version));
        }
        NarNetwork net;
        net.delays = doc.at("delays").get<int>();
        net.hidden = doc.at("hidden").get<int>();
        if (net.delays < 1 || net.hidden < 1) {
            throw IoError("model dimensions must be positive");
        }
        const auto& rows = doc.at("input_weights");
        if (static_cast<int>(rows.size()) != net.hidden) {
            throw IoError("input_weights row count does not match hidden size");
        }
        net.input_weights.reserve(static_cast<std::size_t>(net.hidden) * net.delays);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != net.delays) {
                throw IoError("input_weights row length does not match delay count");
            }
            for (const auto& w : row) {
                net.input_weights.push_back(w.get<double>());
            }
        }
        net.hidden_biases = doc.at("hidden_biases").get<std::vector<double>>();
        net.output_weights = doc.at("output_weights").get<std::vector<double>>();
        if (static_cast<int>(net.hidden_biases.size()) != net.hidden ||
            static_cast<int>(net.output_weights.size()) != net.hidden) {
            throw IoError("bias or output weight count does not match hidden size");
        }
        net.output_bias = doc.at("output_bias").get<double>();
        net.hidden_activation = activation_from_string(doc.at("hidden_activation").get<std::string>());
        net.output_activation = activation_from_string(doc.at("output_activation").get<std::string>());
        net.norm.raw_min = doc.at("norm").at("raw_min").get<double>();
        net.norm.raw_max = doc.at("norm").at("raw_max").get<double>();
        if (!(net.norm.raw_min < net.norm.raw_max)) {
            throw IoError("model norm range is degenerate");
        }
        for (double w : flatten_parameters(net)) {
            if (!std::isfinite(w)) {
                throw IoError("model contains non-finite parameters");
            }
        }
        return net;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed model document: ") + e.what());
    }
}

void save_network(const NarNetwork& net, const std::string& path) {
    std::ofstream file(path);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    file << network_to_json(net) << '\n';
    if (!file) {
        throw IoError("failed writing model to " + path);
    }
}

NarNetwork load_network(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open model file " + path);
    }
    std::string document((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    return network_from_json(document);
}

} // namespace narcast
