#pragma once

#include "narcast/network.hpp"
#include "narcast/resample.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace narcast {

/**
 * Lag-windowed samples: window i holds the `delays` series values
 * preceding position i + delays, whose value is target i. Windows and
 * targets are kept in raw units; `source_scale` records the bounds of
 * the source series so training can map them to [-1, +1] and back.
 */
struct LagDataset {
    int delays = 0;
    std::vector<double> inputs;  // row-major, size() x delays, raw units
    std::vector<double> targets; // raw units
    NormParams source_scale;

    std::size_t size() const { return targets.size(); }
    std::span<const double> window(std::size_t i) const {
        return {inputs.data() + i * static_cast<std::size_t>(delays),
                static_cast<std::size_t>(delays)};
    }
};

/// Throws InputError when the series has no sample after windowing
/// (length <= delays) or when the series is constant.
LagDataset build_lag_dataset(std::span<const double> values, int delays);
LagDataset build_lag_dataset(const WeeklySeries& w, int delays);

/// Affine map sending [p.raw_min, p.raw_max] onto [-1, +1], elementwise.
std::vector<double> minmax_normalize(std::span<const double> values, NormParams p);

/// Bounds derived from the values themselves; throws on constant input.
std::vector<double> minmax_normalize(std::span<const double> values);

/// Exact inverse of minmax_normalize for the same params.
std::vector<double> minmax_denormalize(std::span<const double> values, NormParams p);

struct SplitRatios {
    double train = 0.70;
    double validation = 0.15;
    double test = 0.15;
};

/**
 * Largest-remainder rounding of ratios * n; the leftover units go to the
 * subsets with the largest fractional parts, ties resolved in the order
 * train, validation, test. Throws InputError when the ratios are invalid
 * or any subset would be empty.
 */
std::array<std::size_t, 3> split_sizes(std::size_t n, SplitRatios ratios);

/// Disjoint index sets over [0, n); union covers every index exactly once.
struct SplitAssignment {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
    std::vector<std::size_t> test;
};

/// Uniformly random assignment from a seeded deterministic generator,
/// subset sizes per split_sizes.
SplitAssignment random_split(std::size_t n, SplitRatios ratios, std::uint64_t seed);

struct TrainingConfig {
    SplitRatios ratios;
    std::uint64_t seed = 0;
    int max_epochs = 1000;
    int patience = 6;          // consecutive validation-error increases tolerated
    double lm_lambda0 = 1e-3;  // initial damping
    double lm_lambda_factor = 10.0;
    double lm_lambda_max = 1e10;
    double gradient_tolerance = 1e-10;
};

enum class StopReason { Patience, MaxEpochs, LambdaOverflow, GradientTolerance };

std::string to_string(StopReason reason);

/**
 * Outcome of a training run. MSE and Pearson R are reported in raw
 * (denormalized) units for the returned model, which is the one with the
 * minimum validation MSE seen over all epochs (epoch 0 = initial
 * parameters). Pearson R is NaN when a subset's predictions or targets
 * are constant.
 */
struct TrainingReport {
    int epochs_run = 0;
    int best_epoch = 0;
    StopReason stop_reason = StopReason::MaxEpochs;
    double initial_train_mse = 0.0;
    double initial_validation_mse = 0.0;
    double train_mse = 0.0;
    double validation_mse = 0.0;
    double test_mse = 0.0;
    double train_r = 0.0;
    double validation_r = 0.0;
    double test_r = 0.0;
};

/**
 * Damped least-squares (Levenberg-Marquardt) training on the training
 * subset's sum of squared errors, with validation-based early stopping.
 *
 * Each epoch solves (J^T J + lambda I) step = -J^T r and accepts the
 * step only if it reduces the training SSE, dividing lambda by
 * lm_lambda_factor on acceptance and multiplying on rejection. After
 * each epoch the validation MSE is evaluated; the parameters with the
 * minimum validation MSE are returned. Stops on `patience` consecutive
 * validation increases, max_epochs, lambda overflow, or a gradient norm
 * below gradient_tolerance.
 *
 * The dataset is normalized internally via ds.source_scale, and the
 * returned network carries that scale as its norm params.
 */
std::pair<NarNetwork, TrainingReport> train_levenberg_marquardt(const LagDataset& ds,
                                                                const SplitAssignment& split,
                                                                const TrainingConfig& cfg,
                                                                const NarNetwork& net0);

} // namespace narcast
