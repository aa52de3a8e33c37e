// Acceptance suite: every criterion prints one verdict line and checks
// its stated tolerance and time budget.

#include "narcast/errors.hpp"
#include "narcast/forecaster.hpp"
#include "narcast/metrics.hpp"
#include "narcast/network.hpp"
#include "narcast/report.hpp"
#include "narcast/resample.hpp"
#include "narcast/rng.hpp"
#include "narcast/series.hpp"
#include "narcast/trainer.hpp"

#include "support/calendar_oracle.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace narcast;
namespace fs = std::filesystem;

namespace {

const std::string kDataPath = std::string(NARCAST_DATA_DIR) + "/harp_covid.csv";

class Criterion {
public:
    Criterion(int number, std::string name, double budget_seconds)
        : number_(number), name_(std::move(name)), budget_seconds_(budget_seconds),
          start_(std::chrono::steady_clock::now()) {}

    void expect(bool condition) { ok_ = ok_ && condition; }

    ~Criterion() {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const bool in_budget = elapsed < budget_seconds_;
        std::printf("[ACCEPT] C%02d %-34s %s (%.2fs, budget %.0fs)\n", number_, name_.c_str(),
                    (ok_ && in_budget) ? "PASS" : "FAIL", elapsed, budget_seconds_);
        std::fflush(stdout);
        CHECK_MESSAGE(ok_, "criterion C", number_, " (", name_, ") failed its tolerance");
        CHECK_MESSAGE(in_budget, "criterion C", number_, " exceeded its time budget");
    }

private:
    int number_;
    std::string name_;
    double budget_seconds_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point start_;
};

WeeklySeries study_weekly() {
    return monthly_to_weekly(load_monthly_csv(kDataPath));
}

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

double l2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

TEST_CASE("C1 resampling yields the 114 ISO-week bins") {
    Criterion c(1, "resampling-count", 1.0);
    const WeeklySeries weekly = study_weekly();
    c.expect(weekly.size() == 114);
    c.expect(weekly.first_week == IsoWeek{2020, 1});
    c.expect(weekly.last_week() == IsoWeek{2022, 9});

    const auto expected = oracle::week_bins({2020, 1, 1}, {2022, 2, 28});
    c.expect(expected.size() == 114);
    for (std::size_t i = 0; i < weekly.size() && i < expected.size(); ++i) {
        c.expect(weekly.week_at(i).iso_year == expected[i].iso_year &&
                 weekly.week_at(i).iso_week == expected[i].iso_week);
    }
}

TEST_CASE("C2 weekly mass equals the aggregated-column difference") {
    Criterion c(2, "mass-conservation", 1.0);
    const WeeklySeries weekly = study_weekly();
    double total = 0.0;
    for (double v : weekly.values) total += v;
    c.expect(std::fabs(total - 22328.0) / 22328.0 <= 1e-9);
    c.expect(22328.0 == 97135.0 - 74807.0);
}

TEST_CASE("C3 split arithmetic is (80, 17, 17) for every seed") {
    Criterion c(3, "split-arithmetic", 1.0);
    c.expect(split_sizes(114, SplitRatios{}) == std::array<std::size_t, 3>{80, 17, 17});
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const SplitAssignment split = random_split(114, SplitRatios{}, seed);
        c.expect(split.train.size() == 80);
        c.expect(split.validation.size() == 17);
        c.expect(split.test.size() == 17);
    }
}

TEST_CASE("C4 analytic gradients match central differences") {
    Criterion c(4, "gradient-correctness", 5.0);
    Rng rng(8675309);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng.uniform_below(10));
        const int h = 1 + static_cast<int>(rng.uniform_below(10));
        NarNetwork net = init_network(d, h, rng.next_u64());
        std::vector<double> params = flatten_parameters(net);
        for (double& p : params) p *= rng.uniform(0.5, 3.0);
        set_parameters(net, params);

        std::vector<double> lags(static_cast<std::size_t>(d));
        for (double& x : lags) x = rng.uniform(-1.0, 1.0);
        const double target = rng.uniform(-1.0, 1.0);

        const std::vector<double> analytic = parameter_gradient(net, lags, target);
        std::vector<double> numeric(params.size());
        NarNetwork probe = net;
        const double step = 1e-6;
        for (std::size_t i = 0; i < params.size(); ++i) {
            std::vector<double> hi = params, lo = params;
            hi[i] += step;
            lo[i] -= step;
            set_parameters(probe, hi);
            double e = forward(probe, lags) - target;
            const double loss_hi = 0.5 * e * e;
            set_parameters(probe, lo);
            e = forward(probe, lags) - target;
            const double loss_lo = 0.5 * e * e;
            numeric[i] = (loss_hi - loss_lo) / (2.0 * step);
        }
        std::vector<double> diff(params.size());
        for (std::size_t i = 0; i < params.size(); ++i) diff[i] = analytic[i] - numeric[i];
        c.expect(l2(diff) / std::max(l2(numeric), 1e-12) < 1e-5);
    }
}

TEST_CASE("C5 the trainer learns a synthetic tanh-NAR(3) process") {
    Criterion c(5, "learning-capability", 30.0);
    int passed = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::vector<double> series = synthetic::tanh_nar3_series(300, seed);
        const LagDataset ds = build_lag_dataset(series, 10);
        const SplitAssignment split = random_split(ds.size(), SplitRatios{}, seed);
        TrainingConfig cfg;
        cfg.seed = seed;
        const NarNetwork net0 = init_network(10, 10, seed * 1000 + 1);
        const auto [net, report] = train_levenberg_marquardt(ds, split, cfg, net0);

        const std::vector<double> xs = minmax_normalize(ds.inputs, ds.source_scale);
        std::vector<double> predicted, actual;
        for (std::size_t i : split.test) {
            const std::span<const double> window(xs.data() + i * 10, 10);
            predicted.push_back(net.norm.denormalize(forward(net, window)));
            actual.push_back(ds.targets[i]);
        }
        if (point_metrics(predicted, actual).r_squared >= 0.95) ++passed;
    }
    c.expect(passed >= 8);
}

TEST_CASE("C6 study pipeline: convergence, finite forecast, monotone aggregate") {
    Criterion c(6, "study-pipeline-properties", 60.0);
    PipelineConfig cfg;
    cfg.data_path = kDataPath;
    cfg.seed = 1;
    const RunArtifacts art = run_pipeline(cfg);

    c.expect(art.training.has_value());
    c.expect(art.training->train_mse < art.training->initial_train_mse);

    const long steps = oracle::horizon_weeks({2022, 2, 28}, 2030, 12);
    c.expect(steps == 461);
    c.expect(art.forecast.weekly.size() == static_cast<std::size_t>(steps) + 1);

    for (double v : art.forecast.weekly.values) {
        c.expect(std::isfinite(v) && v >= 0.0);
    }
    c.expect(art.forecast.cumulative.base == 97135.0);
    c.expect(!art.forecast.cumulative.values.empty());
    double previous = art.forecast.cumulative.base;
    for (double v : art.forecast.cumulative.values) {
        c.expect(std::isfinite(v) && v >= previous);
        previous = v;
    }
}

TEST_CASE("C7 metric definitions: RMSE >= MAE and the hand example") {
    Criterion c(7, "metric-definitions", 5.0);
    Rng rng(424242);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(30);
        std::vector<double> predicted(n), actual(n);
        for (std::size_t i = 0; i < n; ++i) {
            predicted[i] = rng.uniform(-50.0, 50.0);
            actual[i] = rng.uniform(-50.0, 50.0);
        }
        actual[0] = 500.0; // keep actuals non-constant
        const MetricsReport m = point_metrics(predicted, actual);
        c.expect(m.rmse >= m.mae - 1e-12 * std::max(1.0, m.mae));
    }

    const MetricsReport hand =
        point_metrics(std::vector<double>{2.0, 4.0}, std::vector<double>{1.0, 3.0});
    c.expect(hand.rmse == 1.0);
    c.expect(hand.mae == 1.0);
    c.expect(std::fabs(hand.mape - 200.0 / 3.0) < 1e-9);
    c.expect(std::fabs(hand.mape - 66.67) < 0.005);
}

TEST_CASE("C8 published-value audit flags exactly one violation") {
    Criterion c(8, "published-value-audit", 1.0);
    const std::vector<std::string> violations =
        metric_consistency_check(ClaimedMetrics{36.92, 180.76, 28.54, 0.5872});
    c.expect(violations.size() == 1);
    c.expect(!violations.empty() && violations[0].find("RMSE") != std::string::npos &&
             violations[0].find("MAE") != std::string::npos);
}

TEST_CASE("C9 SDG-3 arithmetic") {
    Criterion c(9, "sdg3-arithmetic", 1.0);
    const double monthly_change = percentage_change(174.0, 457.0);
    const double annual_change = percentage_change(1591.0, 4144.0);
    c.expect(std::fabs(monthly_change - 162.64) <= 0.01);
    c.expect(std::fabs(annual_change - 160.47) <= 0.01);
    // both recomputed figures sit within half a point of the published ones
    c.expect(std::fabs(monthly_change - 162.91) <= 0.5);
    c.expect(std::fabs(annual_change - 160.49) <= 0.5);

    const Sdg3Report report =
        sdg3_assess(MonthPeriod{2010, 12}, 174.0, MonthPeriod{2030, 12}, 457.0);
    c.expect(report.achieved == false);
    c.expect(std::fabs(report.required_ceiling - 17.4) < 1e-12);
}

TEST_CASE("C10 pipeline runs are byte-deterministic") {
    Criterion c(10, "determinism", 60.0);
    const fs::path base =
        fs::temp_directory_path() / ("narcast_accept_" + std::to_string(::getpid()));
    fs::remove_all(base);
    fs::create_directories(base);

    const std::string cli = NARCAST_CLI_PATH;
    const std::string flags = " pipeline --data " + kDataPath + " --seed 7 --out ";
    const int rc_a =
        std::system((cli + flags + (base / "a").string() + " >/dev/null 2>&1").c_str());
    const int rc_b =
        std::system((cli + flags + (base / "b").string() + " >/dev/null 2>&1").c_str());
    c.expect(rc_a != -1 && WEXITSTATUS(rc_a) == 0);
    c.expect(rc_b != -1 && WEXITSTATUS(rc_b) == 0);
    c.expect(slurp(base / "a" / "forecast.csv") == slurp(base / "b" / "forecast.csv"));
    c.expect(slurp(base / "a" / "report.txt") == slurp(base / "b" / "report.txt"));
    fs::remove_all(base);
}
