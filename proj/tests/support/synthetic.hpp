#pragma once

#include "narcast/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

// Seeded generators for training tests. Both run a burn-in so the
// returned window sits on the process attractor.
namespace synthetic {

/// Nonlinear autoregressive order-3 process on a limit-cycle attractor:
/// y_t = 1.5 * tanh(0.9*y_{t-1} - 1.1*y_{t-2} + 0.6*y_{t-3}) + noise,
/// with noise sigma = noise_fraction * (noise-free attractor range).
inline std::vector<double> tanh_nar3_series(std::size_t length, std::uint64_t seed,
                                            double noise_fraction = 0.01) {
    constexpr double kAmp = 1.5, kB1 = 0.9, kB2 = -1.1, kB3 = 0.6;
    constexpr std::size_t kBurnIn = 100;
    const auto step = [](double y1, double y2, double y3) {
        return kAmp * std::tanh(kB1 * y1 + kB2 * y2 + kB3 * y3);
    };

    // Noise-free pass to measure the attractor range the noise scales to.
    std::vector<double> clean{0.3, -0.2, 0.1};
    for (std::size_t t = 0; t < kBurnIn + length; ++t) {
        const std::size_t k = clean.size();
        clean.push_back(step(clean[k - 1], clean[k - 2], clean[k - 3]));
    }
    double lo = clean[kBurnIn], hi = clean[kBurnIn];
    for (std::size_t i = kBurnIn; i < clean.size(); ++i) {
        lo = std::min(lo, clean[i]);
        hi = std::max(hi, clean[i]);
    }
    const double sigma = noise_fraction * (hi - lo);

    narcast::Rng rng(seed);
    std::vector<double> y{0.3, -0.2, 0.1};
    for (std::size_t t = 0; t < kBurnIn + length; ++t) {
        const std::size_t k = y.size();
        y.push_back(step(y[k - 1], y[k - 2], y[k - 3]) + rng.normal(0.0, sigma));
    }
    return {y.begin() + kBurnIn + 3, y.end()};
}

/// Stationary AR(1): y_t = phi * y_{t-1} + N(0, sigma^2).
inline std::vector<double> ar1_series(std::size_t length, double phi, double sigma,
                                      std::uint64_t seed) {
    constexpr std::size_t kBurnIn = 200;
    narcast::Rng rng(seed);
    double y = 0.0;
    std::vector<double> out;
    out.reserve(length);
    for (std::size_t t = 0; t < kBurnIn + length; ++t) {
        y = phi * y + rng.normal(0.0, sigma);
        if (t >= kBurnIn) out.push_back(y);
    }
    return out;
}

} // namespace synthetic
