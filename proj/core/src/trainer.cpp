#include "narcast/trainer.hpp"

#include "narcast/errors.hpp"
#include "narcast/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace narcast {

namespace {

void check_norm_params(NormParams p) {
    if (!(p.raw_min < p.raw_max)) {
        throw InputError("degenerate normalization range");
    }
}

double pearson_or_nan(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

void validate_split(const SplitAssignment& split, std::size_t n) {
    std::vector<char> seen(n, 0);
    std::size_t total = 0;
    for (const auto* subset : {&split.train, &split.validation, &split.test}) {
        for (std::size_t idx : *subset) {
            if (idx >= n || seen[idx]) {
                throw InputError("split indices must be disjoint and within [0, n)");
            }
            seen[idx] = 1;
            ++total;
        }
    }
    if (total != n) {
        throw InputError("split does not cover every sample exactly once");
    }
    if (split.train.empty() || split.validation.empty()) {
        throw InputError("training and validation subsets must be nonempty");
    }
}

} // namespace

LagDataset build_lag_dataset(std::span<const double> values, int delays) {
    if (delays < 1) {
        throw InputError("delay count must be positive");
    }
    if (values.size() <= static_cast<std::size_t>(delays)) {
        throw InputError("series length " + std::to_string(values.size()) +
                         " leaves no sample after " + std::to_string(delays) + " delays");
    }
    LagDataset ds;
    ds.delays = delays;
    ds.source_scale = NormParams::from_values(values);
    const std::size_t n = values.size() - static_cast<std::size_t>(delays);
    ds.inputs.reserve(n * static_cast<std::size_t>(delays));
    ds.targets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < delays; ++j) {
            ds.inputs.push_back(values[i + static_cast<std::size_t>(j)]);
        }
        ds.targets.push_back(values[i + static_cast<std::size_t>(delays)]);
    }
    return ds;
}

LagDataset build_lag_dataset(const WeeklySeries& w, int delays) {
    return build_lag_dataset(std::span<const double>(w.values), delays);
}

std::vector<double> minmax_normalize(std::span<const double> values, NormParams p) {
    check_norm_params(p);
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(p.normalize(v));
    return out;
}

std::vector<double> minmax_normalize(std::span<const double> values) {
    return minmax_normalize(values, NormParams::from_values(values));
}

std::vector<double> minmax_denormalize(std::span<const double> values, NormParams p) {
    check_norm_params(p);
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(p.denormalize(v));
    return out;
}

std::array<std::size_t, 3> split_sizes(std::size_t n, SplitRatios ratios) {
    const double sum = ratios.train + ratios.validation + ratios.test;
    if (ratios.train <= 0.0 || ratios.validation <= 0.0 || ratios.test <= 0.0 ||
        std::fabs(sum - 1.0) > 1e-9) {
        throw InputError("split ratios must be positive and sum to 1");
    }
    const double shares[3] = {ratios.train, ratios.validation, ratios.test};
    std::array<std::size_t, 3> sizes{};
    double fractions[3];
    std::size_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
        const double exact = shares[i] * static_cast<double>(n);
        sizes[i] = static_cast<std::size_t>(std::floor(exact));
        fractions[i] = exact - std::floor(exact);
        assigned += sizes[i];
    }
    // Largest remainder; ties go to the earlier subset (train first).
    int order[3] = {0, 1, 2};
    std::stable_sort(order, order + 3, [&](int a, int b) { return fractions[a] > fractions[b]; });
    for (std::size_t left = n - assigned, i = 0; left > 0; --left, ++i) {
        ++sizes[order[i]];
    }
    if (sizes[0] == 0 || sizes[1] == 0 || sizes[2] == 0) {
        throw InputError("n = " + std::to_string(n) + " is too small for three nonempty subsets");
    }
    return sizes;
}

SplitAssignment random_split(std::size_t n, SplitRatios ratios, std::uint64_t seed) {
    const auto sizes = split_sizes(n, ratios);
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(indices);

    SplitAssignment split;
    split.train.assign(indices.begin(), indices.begin() + static_cast<long>(sizes[0]));
    split.validation.assign(indices.begin() + static_cast<long>(sizes[0]),
                            indices.begin() + static_cast<long>(sizes[0] + sizes[1]));
    split.test.assign(indices.begin() + static_cast<long>(sizes[0] + sizes[1]), indices.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.validation.begin(), split.validation.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::Patience: return "patience";
        case StopReason::MaxEpochs: return "max_epochs";
        case StopReason::LambdaOverflow: return "lambda_overflow";
        case StopReason::GradientTolerance: return "gradient_tolerance";
    }
    return "unknown";
}

std::pair<NarNetwork, TrainingReport> train_levenberg_marquardt(const LagDataset& ds,
                                                                const SplitAssignment& split,
                                                                const TrainingConfig& cfg,
                                                                const NarNetwork& net0) {
    if (ds.size() == 0) {
        throw InputError("empty dataset");
    }
    if (net0.delays != ds.delays) {
        throw InputError("network delay count does not match dataset window width");
    }
    if (net0.hidden_activation == Activation::UnitStep ||
        net0.output_activation == Activation::UnitStep) {
        throw InputError("training requires differentiable activations");
    }
    if (cfg.patience < 1 || cfg.max_epochs < 1 || cfg.lm_lambda0 <= 0.0 ||
        cfg.lm_lambda_factor <= 1.0 || cfg.lm_lambda_max < cfg.lm_lambda0) {
        throw InputError("invalid training configuration");
    }
    validate_split(split, ds.size());

    const auto d = static_cast<std::size_t>(ds.delays);
    const auto p = static_cast<std::size_t>(net0.parameter_count());
    const std::vector<double> xs = minmax_normalize(ds.inputs, ds.source_scale);
    const std::vector<double> ts = minmax_normalize(ds.targets, ds.source_scale);

    NarNetwork net = net0;
    net.norm = ds.source_scale;

    const auto window = [&](std::size_t i) {
        return std::span<const double>(xs.data() + i * d, d);
    };
    const auto subset_sse = [&](const std::vector<std::size_t>& idx) {
        double sse = 0.0;
        for (std::size_t i : idx) {
            const double e = forward(net, window(i)) - ts[i];
            sse += e * e;
        }
        return sse;
    };
    const auto subset_mse = [&](const std::vector<std::size_t>& idx) {
        return subset_sse(idx) / static_cast<double>(idx.size());
    };
    // Raw-unit MSE of the current parameters over a subset.
    const auto raw_mse = [&](const std::vector<std::size_t>& idx) {
        double sse = 0.0;
        for (std::size_t i : idx) {
            const double e = net.norm.denormalize(forward(net, window(i))) - ds.targets[i];
            sse += e * e;
        }
        return sse / static_cast<double>(idx.size());
    };
    const auto raw_pearson = [&](const std::vector<std::size_t>& idx) {
        std::vector<double> predicted, actual;
        predicted.reserve(idx.size());
        actual.reserve(idx.size());
        for (std::size_t i : idx) {
            predicted.push_back(net.norm.denormalize(forward(net, window(i))));
            actual.push_back(ds.targets[i]);
        }
        return pearson_or_nan(predicted, actual);
    };

    TrainingReport report;
    report.initial_train_mse = raw_mse(split.train);
    report.initial_validation_mse = raw_mse(split.validation);

    Eigen::VectorXd theta = Eigen::Map<const Eigen::VectorXd>(flatten_parameters(net).data(),
                                                              static_cast<long>(p));
    double train_sse = subset_sse(split.train);
    if (!std::isfinite(train_sse)) {
        throw TrainingError("non-finite initial training loss");
    }

    double best_val = subset_mse(split.validation);
    Eigen::VectorXd best_theta = theta;
    int best_epoch = 0;
    double prev_val = best_val;
    int consecutive_increases = 0;
    double lambda = cfg.lm_lambda0;
    StopReason reason = StopReason::MaxEpochs;
    int epochs_run = 0;

    const long n_train = static_cast<long>(split.train.size());
    Eigen::MatrixXd jacobian(n_train, static_cast<long>(p));
    Eigen::VectorXd residuals(n_train);

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        for (long row = 0; row < n_train; ++row) {
            const std::size_t i = split.train[static_cast<std::size_t>(row)];
            const std::vector<double> grad = output_gradient(net, window(i));
            jacobian.row(row) = Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<long>(p));
            residuals(row) = forward(net, window(i)) - ts[i];
        }
        const Eigen::VectorXd gradient = jacobian.transpose() * residuals;
        if (gradient.norm() < cfg.gradient_tolerance) {
            reason = StopReason::GradientTolerance;
            break;
        }
        const Eigen::MatrixXd hessian_approx = jacobian.transpose() * jacobian;

        bool accepted = false;
        while (lambda <= cfg.lm_lambda_max) {
            Eigen::MatrixXd damped = hessian_approx;
            damped.diagonal().array() += lambda;
            const Eigen::VectorXd candidate = theta + damped.ldlt().solve(-gradient);
            set_parameters(net, std::span<const double>(candidate.data(), p));
            const double candidate_sse = subset_sse(split.train);
            if (std::isfinite(candidate_sse) && candidate_sse < train_sse) {
                theta = candidate;
                train_sse = candidate_sse;
                lambda = std::max(lambda / cfg.lm_lambda_factor, 1e-12);
                accepted = true;
                break;
            }
            lambda *= cfg.lm_lambda_factor;
        }
        if (!accepted) {
            set_parameters(net, std::span<const double>(theta.data(), p));
            reason = StopReason::LambdaOverflow;
            break;
        }
        epochs_run = epoch;

        const double val = subset_mse(split.validation);
        if (!std::isfinite(val)) {
            throw TrainingError("non-finite validation loss");
        }
        if (val < best_val) {
            best_val = val;
            best_theta = theta;
            best_epoch = epoch;
        }
        if (val > prev_val) {
            ++consecutive_increases;
        } else {
            consecutive_increases = 0;
        }
        prev_val = val;
        if (consecutive_increases >= cfg.patience) {
            reason = StopReason::Patience;
            break;
        }
    }

    set_parameters(net, std::span<const double>(best_theta.data(), p));
    report.epochs_run = epochs_run;
    report.best_epoch = best_epoch;
    report.stop_reason = reason;
    report.train_mse = raw_mse(split.train);
    report.validation_mse = raw_mse(split.validation);
    report.test_mse = split.test.empty() ? std::numeric_limits<double>::quiet_NaN()
                                         : raw_mse(split.test);
    report.train_r = raw_pearson(split.train);
    report.validation_r = raw_pearson(split.validation);
    report.test_r = split.test.empty() ? std::numeric_limits<double>::quiet_NaN()
                                       : raw_pearson(split.test);
    return {std::move(net), report};
}

} // namespace narcast
