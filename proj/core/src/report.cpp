#include "narcast/report.hpp"

#include "narcast/errors.hpp"
#include "narcast/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace narcast {

namespace chr = std::chrono;

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

double sum(std::span<const double> values) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

MonthlySeries slice_months(const MonthlySeries& s, MonthPeriod first, MonthPeriod last) {
    const int i0 = month_index(first, s.origin) - 1;
    const int i1 = month_index(last, s.origin) - 1;
    if (i1 >= static_cast<int>(s.size())) {
        throw InputError("month slice exceeds the series range");
    }
    MonthlySeries out;
    out.origin = first;
    out.values.assign(s.values.begin() + i0, s.values.begin() + i1 + 1);
    return out;
}

/// First month fully covered when coverage starts at `day`.
MonthPeriod first_full_month(chr::sys_days day) {
    const chr::year_month_day ymd{day};
    MonthPeriod month{static_cast<int>(ymd.year()), static_cast<int>(unsigned(ymd.month()))};
    if (unsigned(ymd.day()) != 1) {
        month = next_month(month);
    }
    return month;
}

/// Last month fully covered when coverage ends at `day`.
MonthPeriod last_full_month(chr::sys_days day) {
    const chr::year_month_day ymd{day};
    MonthPeriod month{static_cast<int>(ymd.year()), static_cast<int>(unsigned(ymd.month()))};
    if (day != month_last_day(month.year, month.month)) {
        month = advance_month(month, -1);
    }
    return month;
}

MetricsReport subset_point_metrics(const WeeklySeries& weekly, const WeeklySeries& one_step,
                                   int delays, const std::vector<std::size_t>& indices) {
    std::vector<double> predicted, actual;
    predicted.reserve(indices.size());
    actual.reserve(indices.size());
    for (std::size_t i : indices) {
        predicted.push_back(one_step.values[i]);
        actual.push_back(weekly.values[i + static_cast<std::size_t>(delays)]);
    }
    return point_metrics(predicted, actual);
}

RunArtifacts assemble(const PipelineConfig& cfg, MonthlySeries observed, NarNetwork model,
                      std::optional<TrainingReport> training, SplitAssignment split,
                      const std::string& model_source) {
    RunArtifacts art;
    art.config = cfg;
    art.model_source = model_source;
    art.observed = std::move(observed);
    art.observed_cumulative = cumulative_from_incident(art.observed, cfg.base_aggregate);
    art.weekly = monthly_to_weekly(art.observed);
    art.model = std::move(model);
    art.training = std::move(training);
    art.split = std::move(split);

    art.one_step = one_step_weekly_predictions(art.model, art.weekly);
    const std::size_t n = art.one_step.size();
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (const auto& [name, indices] :
         {std::pair<std::string, const std::vector<std::size_t>*>{"train", &art.split.train},
          {"validation", &art.split.validation},
          {"test", &art.split.test},
          {"all", &all}}) {
        art.subset_metrics.push_back(
            {name, subset_point_metrics(art.weekly, art.one_step, cfg.delays, *indices)});
    }

    std::vector<double> residuals(n);
    for (std::size_t i = 0; i < n; ++i) {
        residuals[i] =
            art.one_step.values[i] - art.weekly.values[i + static_cast<std::size_t>(cfg.delays)];
    }
    const std::size_t max_lag = std::min<std::size_t>(20, n - 1);
    art.residual_acf = residual_autocorrelation(residuals, max_lag);

    // Closed-loop forecast to the horizon. The last observed (partial)
    // week is kept as the head of the assembled weekly series so the
    // first target month's leading days are covered.
    const IsoWeek last_week = art.weekly.last_week();
    const long steps = horizon_weeks(last_week, cfg.horizon);
    const auto d = static_cast<std::size_t>(cfg.delays);
    const std::span<const double> window(art.weekly.values.data() + art.weekly.size() - d, d);
    const std::vector<double> predicted = closed_loop_forecast(art.model, window, steps);

    WeeklySeries spliced;
    spliced.first_week = last_week;
    spliced.values.reserve(predicted.size() + 1);
    spliced.values.push_back(art.weekly.values.back());
    spliced.values.insert(spliced.values.end(), predicted.begin(), predicted.end());

    const MonthPeriod first_target = next_month(art.observed.last_period());
    art.forecast = assemble_forecast(spliced, art.observed.last_period(),
                                     art.observed_cumulative.values.back(), first_target,
                                     cfg.horizon);

    // In-sample comparison over the months fully covered by one-step
    // predictions (the first `delays` weeks have no prediction).
    MonthPeriod cmp_first = first_full_month(iso_week_start(art.one_step.first_week));
    MonthPeriod cmp_last = last_full_month(iso_week_end(art.one_step.last_week()));
    cmp_first = std::max(cmp_first, art.observed.origin);
    cmp_last = std::min(cmp_last, art.observed.last_period());
    if (cmp_first <= cmp_last) {
        const MonthlySeries predicted_monthly = weekly_to_monthly(art.one_step, cmp_first, cmp_last);
        const MonthlySeries actual_slice = slice_months(art.observed, cmp_first, cmp_last);
        art.comparison = comparison_table(actual_slice, predicted_monthly);
    }

    // Progress assessment against the December baseline; annual figures
    // only when the forecast covers the horizon year end to end.
    const double target_monthly = art.forecast.monthly.values.back();
    std::optional<double> annual_baseline, annual_forecast;
    if (cfg.horizon.month == 12 && first_target <= MonthPeriod{cfg.horizon.year, 1}) {
        const MonthlySeries year =
            slice_months(art.forecast.monthly, {cfg.horizon.year, 1}, cfg.horizon);
        annual_baseline = registry::kYear2010NewInfections;
        annual_forecast = sum(year.values);
    }
    art.sdg3 = sdg3_assess(MonthPeriod{2010, 12}, registry::kDec2010NewInfections, cfg.horizon,
                           target_monthly, annual_baseline, annual_forecast);

    for (const std::string& violation : metric_consistency_check(reference::kPublishedMetrics)) {
        art.consistency_findings.push_back("published reference metrics: " + violation);
    }
    const MetricsReport& all_metrics = art.subset_metrics.back().metrics;
    for (const std::string& violation : metric_consistency_check(
             {all_metrics.rmse, all_metrics.mae, all_metrics.mape, all_metrics.r_squared})) {
        art.consistency_findings.push_back("this run's all-data metrics: " + violation);
    }
    return art;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    file << content;
    if (!file) {
        throw IoError("failed writing " + path.string());
    }
}

std::vector<std::string> month_labels(MonthPeriod origin, std::size_t count) {
    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        labels.push_back(to_string(advance_month(origin, static_cast<int>(i))));
    }
    return labels;
}

std::string render_trend_monthly(const RunArtifacts& art) {
    LineChart chart;
    chart.title = "Monthly HIV cases: observed and forecast";
    chart.y_label = "cases / month";
    const std::size_t observed_n = art.observed.size();
    const std::size_t forecast_n = art.forecast.monthly.size();
    chart.x_tick_labels = month_labels(art.observed.origin, observed_n + forecast_n);
    chart.series.push_back({"observed", "#1f5fa8", 0, art.observed.values});
    if (art.comparison && !art.comparison->rows.empty()) {
        std::vector<double> fitted;
        fitted.reserve(art.comparison->rows.size());
        for (const ComparisonRow& row : art.comparison->rows) fitted.push_back(row.predicted);
        const auto offset = static_cast<std::size_t>(
            month_index(art.comparison->rows.front().period, art.observed.origin) - 1);
        chart.series.push_back({"one-step fit", "#2e9e4f", offset, std::move(fitted)});
    }
    if (forecast_n > 0) {
        chart.series.push_back({"forecast", "#d9822b", observed_n, art.forecast.monthly.values});
    }
    return render_line_chart(chart);
}

std::string render_trend_cumulative(const RunArtifacts& art) {
    LineChart chart;
    chart.title = "Aggregated HIV cases: observed and forecast";
    chart.y_label = "cumulative cases";
    const std::size_t observed_n = art.observed_cumulative.size();
    const std::size_t forecast_n = art.forecast.cumulative.size();
    chart.x_tick_labels = month_labels(art.observed.origin, observed_n + forecast_n);
    chart.series.push_back({"observed", "#1f5fa8", 0, art.observed_cumulative.values});
    if (forecast_n > 0) {
        chart.series.push_back({"forecast", "#d9822b", observed_n, art.forecast.cumulative.values});
    }
    return render_line_chart(chart);
}

} // namespace

double percentage_change(double base, double now) {
    if (base <= 0.0) {
        throw InputError("percentage change requires a positive base");
    }
    return 100.0 * (now - base) / base;
}

Sdg3Report sdg3_assess(MonthPeriod baseline_period, double baseline_cases,
                       MonthPeriod target_period, double forecast_cases,
                       std::optional<double> annual_baseline,
                       std::optional<double> annual_forecast) {
    if (baseline_cases <= 0.0) {
        throw InputError("SDG-3 assessment requires a positive baseline");
    }
    Sdg3Report report;
    report.baseline_period = baseline_period;
    report.baseline_cases = baseline_cases;
    report.target_period = target_period;
    report.forecast_cases = forecast_cases;
    report.percent_change = percentage_change(baseline_cases, forecast_cases);
    report.required_ceiling = 0.10 * baseline_cases;
    report.achieved = forecast_cases <= report.required_ceiling;
    if (annual_baseline && annual_forecast) {
        report.annual_baseline = annual_baseline;
        report.annual_forecast = annual_forecast;
        report.annual_percent_change = percentage_change(*annual_baseline, *annual_forecast);
    }
    return report;
}

ComparisonTable comparison_table(const MonthlySeries& actual, const MonthlySeries& predicted) {
    if (actual.origin != predicted.origin || actual.size() != predicted.size()) {
        throw InputError("actual and predicted series must cover identical period ranges");
    }
    ComparisonTable table;
    table.rows.reserve(actual.size());
    for (std::size_t i = 0; i < actual.size(); ++i) {
        table.rows.push_back({actual.period_at(i), actual.values[i], predicted.values[i],
                              actual.values[i] - predicted.values[i]});
    }
    try {
        table.summary = point_metrics(predicted.values, actual.values);
    } catch (const InputError&) {
        table.summary = std::nullopt; // undefined for single-row or constant actuals
    }
    return table;
}

RunArtifacts run_pipeline(const PipelineConfig& cfg) {
    PipelineConfig config = cfg;
    config.training.seed = cfg.seed;

    const MonthlySeries observed = load_monthly_csv(config.data_path);
    const WeeklySeries weekly = monthly_to_weekly(observed);
    const LagDataset dataset = build_lag_dataset(weekly, config.delays);
    SplitAssignment split = random_split(dataset.size(), config.training.ratios, config.seed);
    const NarNetwork initial = init_network(config.delays, config.hidden, config.seed + 1);
    auto [trained, training_report] =
        train_levenberg_marquardt(dataset, split, config.training, initial);
    return assemble(config, observed, std::move(trained), training_report, std::move(split),
                    "trained in this run");
}

RunArtifacts run_with_model(const PipelineConfig& cfg, const NarNetwork& model,
                            const std::string& model_source) {
    PipelineConfig config = cfg;
    config.training.seed = cfg.seed;

    const MonthlySeries observed = load_monthly_csv(config.data_path);
    const WeeklySeries weekly = monthly_to_weekly(observed);
    if (static_cast<int>(weekly.size()) <= model.delays) {
        throw InputError("series too short for the model's delay count");
    }
    if (model.delays != config.delays) {
        config.delays = model.delays;
    }
    config.hidden = model.hidden;
    const std::size_t n = weekly.size() - static_cast<std::size_t>(model.delays);
    SplitAssignment split = random_split(n, config.training.ratios, config.seed);
    return assemble(config, observed, model, std::nullopt, std::move(split), model_source);
}

std::string render_forecast_csv(const ForecastResult& forecast) {
    std::string out = "period,monthly_cases,aggregated_cases\n";
    for (std::size_t i = 0; i < forecast.monthly.size(); ++i) {
        out += to_string(forecast.monthly.period_at(i));
        out += ',' + fmt("%.2f", forecast.monthly.values[i]);
        out += ',' + fmt("%.2f", forecast.cumulative.values[i]);
        out += '\n';
    }
    return out;
}

std::string render_metrics_csv(const std::vector<SubsetMetricsRow>& rows) {
    std::string out = "subset,n,rmse,mae,mape_percent,mape_excluded,r_squared,pearson_r\n";
    for (const SubsetMetricsRow& row : rows) {
        out += row.subset;
        out += ',' + std::to_string(row.metrics.n);
        out += ',' + fmt("%.6f", row.metrics.rmse);
        out += ',' + fmt("%.6f", row.metrics.mae);
        out += ',' + fmt("%.6f", row.metrics.mape);
        out += ',' + std::to_string(row.metrics.mape_excluded);
        out += ',' + fmt("%.6f", row.metrics.r_squared);
        out += ',' + fmt("%.6f", row.metrics.pearson_r);
        out += '\n';
    }
    return out;
}

std::string render_comparison_csv(const ComparisonTable& table) {
    std::string out = "period,actual,predicted,residual\n";
    for (const ComparisonRow& row : table.rows) {
        out += to_string(row.period);
        out += ',' + fmt("%.2f", row.actual);
        out += ',' + fmt("%.2f", row.predicted);
        out += ',' + fmt("%.2f", row.residual);
        out += '\n';
    }
    return out;
}

std::string render_report_text(const RunArtifacts& art) {
    std::string out;
    const auto line = [&](const std::string& key, const std::string& value) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "  %-22s: %s\n", key.c_str(), value.c_str());
        out += buf;
    };

    out += "narcast run report\n==================\n\n";

    out += "DATA\n";
    line("source file", art.config.data_path);
    line("months", to_string(art.observed.origin) + " .. " + to_string(art.observed.last_period()) +
                       " (" + std::to_string(art.observed.size()) + ")");
    line("total incident cases", fmt("%.2f", sum(art.observed.values)));
    line("aggregated range", fmt("%.2f", art.observed_cumulative.values.front()) + " .. " +
                                 fmt("%.2f", art.observed_cumulative.values.back()) + " (base " +
                                 fmt("%.2f", art.observed_cumulative.base) + ")");
    line("weekly bins", std::to_string(art.weekly.size()) + " (" + to_string(art.weekly.first_week) +
                            " .. " + to_string(art.weekly.last_week()) + ")");
    line("weekly mass", fmt("%.6f", sum(art.weekly.values)));

    out += "\nMODEL\n";
    line("source", art.model_source);
    line("structure", std::to_string(art.model.delays) + " delays -> " +
                          std::to_string(art.model.hidden) + " hidden (" +
                          to_string(art.model.hidden_activation) + ") -> 1 (" +
                          to_string(art.model.output_activation) + ")");
    line("parameters", std::to_string(art.model.parameter_count()));
    line("normalization", "[" + fmt("%.6f", art.model.norm.raw_min) + ", " +
                              fmt("%.6f", art.model.norm.raw_max) + "] -> [-1, +1]");

    out += "\nTRAINING\n";
    line("seed", std::to_string(art.config.seed));
    line("ratios", fmt("%.2f", art.config.training.ratios.train) + "/" +
                       fmt("%.2f", art.config.training.ratios.validation) + "/" +
                       fmt("%.2f", art.config.training.ratios.test));
    line("samples", std::to_string(art.one_step.size()) + " (train " +
                        std::to_string(art.split.train.size()) + " / validation " +
                        std::to_string(art.split.validation.size()) + " / test " +
                        std::to_string(art.split.test.size()) + ")");
    line("max epochs", std::to_string(art.config.training.max_epochs));
    line("patience", std::to_string(art.config.training.patience));
    line("lm lambda", fmt("%g", art.config.training.lm_lambda0) + " (x" +
                          fmt("%g", art.config.training.lm_lambda_factor) + ", max " +
                          fmt("%g", art.config.training.lm_lambda_max) + ")");
    if (art.training) {
        line("epochs run", std::to_string(art.training->epochs_run));
        line("best epoch", std::to_string(art.training->best_epoch));
        line("stop reason", to_string(art.training->stop_reason));
        line("initial train mse", fmt("%.6f", art.training->initial_train_mse));
        line("initial val mse", fmt("%.6f", art.training->initial_validation_mse));
        line("train mse / R", fmt("%.6f", art.training->train_mse) + " / " +
                                  fmt("%.5f", art.training->train_r));
        line("validation mse / R", fmt("%.6f", art.training->validation_mse) + " / " +
                                       fmt("%.5f", art.training->validation_r));
        line("test mse / R", fmt("%.6f", art.training->test_mse) + " / " +
                                 fmt("%.5f", art.training->test_r));
    } else {
        line("training", "none (model loaded from file)");
    }
    out += "\n  subset metrics (one-step predictions, raw units)\n";
    out += "  subset        n    rmse         mae          mape%        r2        pearson\n";
    for (const SubsetMetricsRow& row : art.subset_metrics) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "  %-12s %4zu  %-11.4f  %-11.4f  %-10.4f  %-8.5f  %-8.5f\n",
                      row.subset.c_str(), row.metrics.n, row.metrics.rmse, row.metrics.mae,
                      row.metrics.mape, row.metrics.r_squared, row.metrics.pearson_r);
        out += buf;
    }

    out += "\nFORECAST\n";
    if (art.forecast.empty()) {
        line("steps", "0 (empty forecast)");
    } else {
        const MonthPeriod first_target = art.forecast.monthly.origin;
        const MonthPeriod last_target = art.forecast.monthly.last_period();
        line("horizon", to_string(last_target) + " (" +
                            std::to_string(art.forecast.weekly.size() - 1) + " weekly steps)");
        line("months", to_string(first_target) + " .. " + to_string(last_target) + " (" +
                           std::to_string(art.forecast.monthly.size()) + ")");
        line("month indexes", std::to_string(month_index(first_target, art.observed.origin)) +
                                  " .. " + std::to_string(month_index(last_target, art.observed.origin)) +
                                  " (" + to_string(art.observed.origin) + " = 1)");
        line("note", "a published reference labels this span \"months 27-158\"; under the origin "
                     "indexing used here it is 27-132");
        line("final monthly", fmt("%.2f", art.forecast.monthly.values.back()));
        line("final aggregate", fmt("%.2f", art.forecast.cumulative.values.back()));
        line("reference monthly", fmt("%g", reference::kDec2030MonthlyCases) + " (2030-12, published)");
        line("reference aggregate", fmt("%g", reference::kDec2030AggregateTabulated) +
                                        " (tabulated) / " +
                                        fmt("%g", reference::kDec2030AggregateSummary) +
                                        " (summary), 2030-12, published");
    }

    out += "\nSDG-3\n";
    if (art.sdg3) {
        const Sdg3Report& s = *art.sdg3;
        line("baseline", to_string(s.baseline_period) + ", " + fmt("%g", s.baseline_cases) +
                             " new infections (registry)");
        line("target", to_string(s.target_period) + ", success ceiling " +
                           fmt("%.2f", s.required_ceiling) + " (90% decline)");
        line("model forecast", fmt("%.2f", s.forecast_cases) + " cases/month");
        line("percent change", fmt("%.2f", s.percent_change) + "%");
        line("achieved", s.achieved ? "yes" : "no");
        if (s.annual_baseline) {
            line("annual baseline", fmt("%g", *s.annual_baseline) + " (registry, " +
                                        std::to_string(s.baseline_period.year) + ")");
            line("annual forecast", fmt("%.2f", *s.annual_forecast) + " (" +
                                        std::to_string(s.target_period.year) + ")");
            line("annual change", fmt("%.2f", *s.annual_percent_change) + "%");
        }
        line("reference arithmetic",
             "published monthly change " + fmt("%.2f", reference::kMonthlyChangePercent) +
                 "% vs recomputed " +
                 fmt("%.2f", percentage_change(registry::kDec2010NewInfections,
                                               reference::kDec2030MonthlyCases)) +
                 "% (174 -> 457)");
        line("", "published annual change " + fmt("%.2f", reference::kAnnualChangePercent) +
                     "% vs recomputed " +
                     fmt("%.2f", percentage_change(registry::kYear2010NewInfections,
                                                   reference::kYear2030AnnualCases)) +
                     "% (1591 -> 4144)");
    } else {
        line("assessment", "not available (no forecast)");
    }

    out += "\nCONSISTENCY\n";
    line("published metrics", "{rmse " + fmt("%g", reference::kPublishedMetrics.rmse) + ", mae " +
                                  fmt("%g", reference::kPublishedMetrics.mae) + ", mape " +
                                  fmt("%g", reference::kPublishedMetrics.mape) + ", r2 " +
                                  fmt("%g", reference::kPublishedMetrics.r_squared) + "}");
    if (art.consistency_findings.empty()) {
        line("findings", "none");
    } else {
        for (const std::string& finding : art.consistency_findings) {
            out += "  - " + finding + "\n";
        }
    }
    line("reference aggregate", "2030-12 appears as " +
                                    fmt("%g", reference::kDec2030AggregateTabulated) +
                                    " (tabulated) and " +
                                    fmt("%g", reference::kDec2030AggregateSummary) +
                                    " (summary); both reported verbatim");
    line("reference fixture", "aggregated step 2029-02 -> 2029-03 is " +
                                  fmt("%g", reference::kMar2029Aggregate -
                                                reference::kFeb2029Aggregate) +
                                  " while the monthly value is " +
                                  fmt("%g", reference::kMar2029Monthly) +
                                  " (internally inconsistent)");
    return out;
}

std::vector<std::filesystem::path> emit_outputs(const RunArtifacts& art,
                                                const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }

    std::vector<std::filesystem::path> written;
    const auto emit = [&](const char* name, const std::string& content) {
        const std::filesystem::path path = out_dir / name;
        write_file(path, content);
        written.push_back(path);
    };

    emit("forecast.csv", render_forecast_csv(art.forecast));
    emit("weekly.csv", serialize_weekly_csv(art.weekly));
    emit("metrics.csv", render_metrics_csv(art.subset_metrics));
    emit("comparison.csv", art.comparison ? render_comparison_csv(*art.comparison)
                                          : std::string("period,actual,predicted,residual\n"));
    emit("report.txt", render_report_text(art));
    emit("trend_monthly.svg", render_trend_monthly(art));
    emit("trend_cumulative.svg", render_trend_cumulative(art));
    emit("acf.svg", art.residual_acf
                        ? render_acf_chart(*art.residual_acf, "Residual autocorrelation")
                        : std::string("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" "
                                      "height=\"540\"><text x=\"480\" y=\"270\" "
                                      "text-anchor=\"middle\">residual autocorrelation "
                                      "unavailable</text></svg>\n"));
    return written;
}

} // namespace narcast
