#include "narcast/forecaster.hpp"
#include "narcast/network.hpp"
#include "narcast/report.hpp"
#include "narcast/resample.hpp"
#include "narcast/series.hpp"
#include "narcast/trainer.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace narcast;

MonthlySeries bundled_series() {
    return load_monthly_csv(std::string(NARCAST_DATA_DIR) + "/harp_covid.csv");
}

void BM_MonthlyToWeekly(benchmark::State& state) {
    const MonthlySeries series = bundled_series();
    for (auto _ : state) {
        benchmark::DoNotOptimize(monthly_to_weekly(series));
    }
}
BENCHMARK(BM_MonthlyToWeekly);

void BM_Forward(benchmark::State& state) {
    const NarNetwork net = init_network(10, 10, 42);
    const std::vector<double> lags(10, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward(net, lags));
    }
}
BENCHMARK(BM_Forward);

void BM_ParameterGradient(benchmark::State& state) {
    const NarNetwork net = init_network(10, 10, 42);
    const std::vector<double> lags(10, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(parameter_gradient(net, lags, 0.5));
    }
}
BENCHMARK(BM_ParameterGradient);

void BM_ClosedLoopForecast(benchmark::State& state) {
    const MonthlySeries series = bundled_series();
    const WeeklySeries weekly = monthly_to_weekly(series);
    NarNetwork net = init_network(10, 10, 42);
    net.norm = NormParams::from_values(weekly.values);
    const std::vector<double> window(weekly.values.end() - 10, weekly.values.end());
    for (auto _ : state) {
        benchmark::DoNotOptimize(closed_loop_forecast(net, window, 461));
    }
}
BENCHMARK(BM_ClosedLoopForecast);

void BM_TrainBundledData(benchmark::State& state) {
    const MonthlySeries series = bundled_series();
    const WeeklySeries weekly = monthly_to_weekly(series);
    const LagDataset dataset = build_lag_dataset(weekly, 10);
    const SplitAssignment split = random_split(dataset.size(), SplitRatios{}, 7);
    TrainingConfig cfg;
    cfg.max_epochs = 50;
    const NarNetwork initial = init_network(10, 10, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_levenberg_marquardt(dataset, split, cfg, initial));
    }
}
BENCHMARK(BM_TrainBundledData)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
