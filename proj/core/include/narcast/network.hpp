#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace narcast {

/// Neuron transfer functions. UnitStep emits exactly 0 or 1 (1 for
/// nonnegative pre-activations); it is exposed for experimentation but
/// has no derivative and is rejected by the gradient and training paths.
enum class Activation { Tanh, Linear, UnitStep };

double apply_activation(Activation a, double x);

/// Derivative at the given pre-activation. Throws InputError for UnitStep.
double activation_derivative(Activation a, double x);

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

/// Bounds of the affine map sending [raw_min, raw_max] onto [-1, +1].
struct NormParams {
    double raw_min = -1.0;
    double raw_max = 1.0;

    /// Tightest bounds of the given values. Throws InputError when the
    /// input is constant (degenerate range).
    static NormParams from_values(std::span<const double> values);

    double normalize(double raw) const;
    double denormalize(double scaled) const;
};

/**
 * Tapped-delay autoregressive perceptron with one hidden layer:
 * `delays` lagged series values feed `hidden` neurons whose outputs
 * combine into a single prediction. Inputs and output live in the
 * normalized [-1, +1] space described by `norm`.
 *
 * Flat parameter order (used by gradients, training, and persistence):
 * input_weights row-major (hidden x delays), hidden_biases,
 * output_weights, output_bias. Total h*d + 2h + 1.
 */
struct NarNetwork {
    int delays = 0;
    int hidden = 0;
    std::vector<double> input_weights;  // row-major, hidden rows x delays columns
    std::vector<double> hidden_biases;  // one per hidden neuron
    std::vector<double> output_weights; // one per hidden neuron
    double output_bias = 0.0;
    Activation hidden_activation = Activation::Tanh;
    Activation output_activation = Activation::Linear;
    NormParams norm;

    int parameter_count() const { return hidden * delays + 2 * hidden + 1; }
};

/**
 * Fresh network with weights and biases drawn i.i.d. uniform on
 * [-0.5, +0.5] from a seeded deterministic generator; tanh hidden and
 * linear output activations. Throws InputError for nonpositive sizes.
 */
NarNetwork init_network(int delays, int hidden, std::uint64_t seed);

/// One-step prediction from `delays` normalized lag values.
double forward(const NarNetwork& net, std::span<const double> lags);

/// d(forward)/d(parameters) in flat parameter order.
std::vector<double> output_gradient(const NarNetwork& net, std::span<const double> lags);

/// Gradient of the squared error 0.5*(forward - target)^2 over all
/// parameters. Requires differentiable activations.
std::vector<double> parameter_gradient(const NarNetwork& net, std::span<const double> lags,
                                       double target);

std::vector<double> flatten_parameters(const NarNetwork& net);
void set_parameters(NarNetwork& net, std::span<const double> params);

/// Versioned JSON document (see network_from_json for the accepted shape).
std::string network_to_json(const NarNetwork& net);
NarNetwork network_from_json(const std::string& document);

void save_network(const NarNetwork& net, const std::string& path);
NarNetwork load_network(const std::string& path);

} // namespace narcast
