#pragma once

#include "narcast/forecaster.hpp"
#include "narcast/metrics.hpp"
#include "narcast/network.hpp"
#include "narcast/resample.hpp"
#include "narcast/series.hpp"
#include "narcast/trainer.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace narcast {

/// Registry figures that are inputs to the pipeline but absent from the
/// bundled monthly CSV (HIV/AIDS & ART Registry of the Philippines).
namespace registry {
inline constexpr double kCumulativeBeforeJan2020 = 74807.0; // running total through Dec 2019
inline constexpr double kDec2010NewInfections = 174.0;      // December 2010 monthly figure
inline constexpr double kYear2010NewInfections = 1591.0;    // full-year 2010 figure
} // namespace registry

/// Previously published reference figures, surfaced verbatim in the
/// report for side-by-side comparison; never asserted as expected model
/// output.
namespace reference {
inline constexpr double kDec2030MonthlyCases = 457.0;
inline constexpr double kYear2030AnnualCases = 4144.0;
inline constexpr double kMonthlyChangePercent = 162.91;
inline constexpr double kAnnualChangePercent = 160.49;
inline constexpr double kDec2030AggregateTabulated = 145723.0;
inline constexpr double kDec2030AggregateSummary = 145273.0;
inline constexpr double kFeb2029Aggregate = 130375.0;
inline constexpr double kMar2029Aggregate = 138349.0;
inline constexpr double kMar2029Monthly = 223.0;
inline constexpr ClaimedMetrics kPublishedMetrics{36.92, 180.76, 28.54, 0.5872};
} // namespace reference

/// 100 * (now - base) / base. Throws InputError for nonpositive base.
double percentage_change(double base, double now);

/// Progress assessment against the 90%-decline goal: achieved when the
/// forecast does not exceed 10% of the baseline.
struct Sdg3Report {
    MonthPeriod baseline_period;
    double baseline_cases = 0.0;
    MonthPeriod target_period;
    double forecast_cases = 0.0;
    double percent_change = 0.0;
    double required_ceiling = 0.0; // 0.10 * baseline
    bool achieved = false;
    std::optional<double> annual_baseline;
    std::optional<double> annual_forecast;
    std::optional<double> annual_percent_change;
};

Sdg3Report sdg3_assess(MonthPeriod baseline_period, double baseline_cases,
                       MonthPeriod target_period, double forecast_cases,
                       std::optional<double> annual_baseline = std::nullopt,
                       std::optional<double> annual_forecast = std::nullopt);

struct ComparisonRow {
    MonthPeriod period;
    double actual = 0.0;
    double predicted = 0.0;
    double residual = 0.0; // actual - predicted
};

/// Row-aligned actual-vs-predicted table with a point_metrics summary.
/// The summary is absent when point_metrics is undefined for the pair
/// (single row or constant actuals).
struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    std::optional<MetricsReport> summary;
};

/// Throws InputError unless both series cover identical period ranges.
ComparisonTable comparison_table(const MonthlySeries& actual, const MonthlySeries& predicted);

/// Everything a full run needs; defaults are the study values.
struct PipelineConfig {
    std::string data_path;
    std::uint64_t seed = 1;
    int delays = 10;
    int hidden = 10;
    TrainingConfig training;
    MonthPeriod horizon{2030, 12};
    double base_aggregate = registry::kCumulativeBeforeJan2020;
};

struct SubsetMetricsRow {
    std::string subset; // train | validation | test | all
    MetricsReport metrics;
};

/// All artifacts of one run, sufficient to render every output file.
struct RunArtifacts {
    PipelineConfig config;
    std::string model_source; // "trained in this run" or a file path
    MonthlySeries observed;
    CumulativeSeries observed_cumulative;
    WeeklySeries weekly;
    SplitAssignment split;
    NarNetwork model;
    std::optional<TrainingReport> training;
    WeeklySeries one_step; // one-step predictions over observed weeks
    std::vector<SubsetMetricsRow> subset_metrics;
    std::optional<AcfReport> residual_acf;
    ForecastResult forecast;
    std::optional<ComparisonTable> comparison;
    std::optional<Sdg3Report> sdg3;
    std::vector<std::string> consistency_findings;
};

/// End-to-end run: ingest, resample, split, train, forecast, evaluate.
RunArtifacts run_pipeline(const PipelineConfig& cfg);

/// Same assembly with an already-trained model (no training step).
RunArtifacts run_with_model(const PipelineConfig& cfg, const NarNetwork& model,
                            const std::string& model_source);

std::string render_forecast_csv(const ForecastResult& forecast);
std::string render_metrics_csv(const std::vector<SubsetMetricsRow>& rows);
std::string render_comparison_csv(const ComparisonTable& table);
std::string render_report_text(const RunArtifacts& artifacts);

/**
 * Writes the run's deterministic file set into out_dir (created if
 * missing): forecast.csv, weekly.csv, metrics.csv, comparison.csv,
 * report.txt, trend_monthly.svg, trend_cumulative.svg, acf.svg.
 * Returns the paths written. Throws IoError on an unwritable target.
 */
std::vector<std::filesystem::path> emit_outputs(const RunArtifacts& artifacts,
                                                const std::filesystem::path& out_dir);

} // namespace narcast
