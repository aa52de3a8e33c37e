#include "narcast/errors.hpp"
#include "narcast/plot.hpp"
#include "narcast/report.hpp"
#include "narcast/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <unistd.h>

using namespace narcast;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

PipelineConfig study_config() {
    PipelineConfig cfg;
    cfg.data_path = std::string(NARCAST_DATA_DIR) + "/harp_covid.csv";
    cfg.seed = 1;
    return cfg;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / (name + std::to_string(::getpid()))) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("percentage_change arithmetic") {
    CHECK(percentage_change(174.0, 457.0) == doctest::Approx(162.64).epsilon(0.0001));
    CHECK(percentage_change(100.0, 100.0) == 0.0);
    CHECK(percentage_change(1591.0, 4144.0) == doctest::Approx(160.47).epsilon(0.0001));
    CHECK_THROWS_AS(percentage_change(0.0, 5.0), InputError);
    CHECK_THROWS_AS(percentage_change(-3.0, 5.0), InputError);
}

TEST_CASE("percentage_change round trips the rate") {
    Rng rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const double base = rng.uniform(0.001, 1e6);
        const double rate = rng.uniform(-99.0, 500.0);
        CHECK(percentage_change(base, base * (1.0 + rate / 100.0)) ==
              doctest::Approx(rate).epsilon(1e-9));
    }
}

TEST_CASE("sdg3_assess against the December 2010 baseline") {
    const Sdg3Report report =
        sdg3_assess(MonthPeriod{2010, 12}, 174.0, MonthPeriod{2030, 12}, 457.0);
    CHECK(report.required_ceiling == doctest::Approx(17.4).epsilon(1e-12));
    CHECK_FALSE(report.achieved);
    CHECK(report.percent_change == doctest::Approx(162.64).epsilon(0.0001));
    CHECK_FALSE(report.annual_percent_change.has_value());

    const Sdg3Report met = sdg3_assess(MonthPeriod{2010, 12}, 174.0, MonthPeriod{2030, 12}, 17.0);
    CHECK(met.achieved);

    CHECK_THROWS_AS(sdg3_assess(MonthPeriod{2010, 12}, 0.0, MonthPeriod{2030, 12}, 10.0),
                    InputError);
}

TEST_CASE("sdg3 achievement is monotone in the forecast") {
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const double baseline = rng.uniform(1.0, 1e4);
        const double f_high = rng.uniform(0.0, 2.0 * baseline);
        const double f_low = rng.uniform(0.0, f_high);
        const bool high_achieved =
            sdg3_assess({2010, 12}, baseline, {2030, 12}, f_high).achieved;
        const bool low_achieved = sdg3_assess({2010, 12}, baseline, {2030, 12}, f_low).achieved;
        if (high_achieved) {
            CHECK(low_achieved); // lowering the forecast can never lose it
        }
    }
}

TEST_CASE("sdg3 annual figures flow through") {
    const Sdg3Report report = sdg3_assess(MonthPeriod{2010, 12}, 174.0, MonthPeriod{2030, 12},
                                          457.0, 1591.0, 4144.0);
    REQUIRE(report.annual_percent_change.has_value());
    CHECK(*report.annual_percent_change == doctest::Approx(160.47).epsilon(0.0001));
}

TEST_CASE("comparison_table aligns rows and computes residuals") {
    MonthlySeries actual{{2020, 1}, {100.0, 110.0, 120.0}};
    MonthlySeries predicted{{2020, 1}, {95.0, 115.0, 120.0}};
    const ComparisonTable table = comparison_table(actual, predicted);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].residual == 5.0);
    CHECK(table.rows[1].residual == -5.0);
    CHECK(table.rows[2].residual == 0.0);
    CHECK(table.rows[0].period == MonthPeriod{2020, 1});
    REQUIRE(table.summary.has_value());
    CHECK(table.summary->n == 3);
}

TEST_CASE("comparison of identical series has zero residuals and perfect summary") {
    const MonthlySeries s = load_monthly_csv(std::string(NARCAST_DATA_DIR) + "/harp_covid.csv");
    const ComparisonTable table = comparison_table(s, s);
    REQUIRE(table.rows.size() == 26);
    for (const ComparisonRow& row : table.rows) CHECK(row.residual == 0.0);
    REQUIRE(table.summary.has_value());
    CHECK(table.summary->rmse == 0.0);
    CHECK(table.summary->r_squared == 1.0);
}

TEST_CASE("single-row comparison works without a defined summary") {
    MonthlySeries actual{{2020, 1}, {100.0}};
    MonthlySeries predicted{{2020, 1}, {90.0}};
    const ComparisonTable table = comparison_table(actual, predicted);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].residual == 10.0);
    CHECK_FALSE(table.summary.has_value());
}

TEST_CASE("comparison_table rejects mismatched ranges") {
    MonthlySeries a{{2020, 1}, {1.0, 2.0}};
    MonthlySeries b{{2020, 2}, {1.0, 2.0}};
    CHECK_THROWS_AS(comparison_table(a, b), InputError);
    MonthlySeries c{{2020, 1}, {1.0}};
    CHECK_THROWS_AS(comparison_table(a, c), InputError);
}

TEST_CASE("run_pipeline produces coherent artifacts on the bundled data") {
    const RunArtifacts art = run_pipeline(study_config());

    CHECK(art.weekly.size() == 114);
    CHECK(art.one_step.size() == 104);
    REQUIRE(art.training.has_value());
    CHECK(art.training->train_mse <= art.training->initial_train_mse);

    // forecast spans March 2022 .. December 2030
    CHECK(art.forecast.monthly.origin == MonthPeriod{2022, 3});
    CHECK(art.forecast.monthly.last_period() == MonthPeriod{2030, 12});
    CHECK(art.forecast.monthly.size() == 106);
    CHECK(art.forecast.weekly.size() == 462); // observed head + 461 steps
    for (std::size_t i = 1; i < art.forecast.cumulative.size(); ++i) {
        CHECK(art.forecast.cumulative.values[i] >= art.forecast.cumulative.values[i - 1]);
    }
    CHECK(art.forecast.cumulative.base == 97135.0);

    REQUIRE(art.comparison.has_value());
    CHECK(art.comparison->rows.front().period == MonthPeriod{2020, 4});
    CHECK(art.comparison->rows.back().period == MonthPeriod{2022, 2});

    REQUIRE(art.sdg3.has_value());
    CHECK(art.sdg3->baseline_cases == 174.0);
    CHECK(art.sdg3->required_ceiling == doctest::Approx(17.4));
    REQUIRE(art.sdg3->annual_forecast.has_value());

    REQUIRE(art.residual_acf.has_value());
    CHECK(art.residual_acf->coefficients[0] == doctest::Approx(1.0));

    // the published-metrics audit must surface the RMSE < MAE flag
    bool found = false;
    for (const std::string& finding : art.consistency_findings) {
        if (finding.find("RMSE") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("emit_outputs writes the full deterministic file set") {
    const RunArtifacts art = run_pipeline(study_config());
    TempDir dir_a("narcast_report_a_");
    TempDir dir_b("narcast_report_b_");

    const auto written = emit_outputs(art, dir_a.path);
    REQUIRE(written.size() == 8);
    const std::set<std::string> names = {"forecast.csv",   "weekly.csv",
                                         "metrics.csv",    "comparison.csv",
                                         "report.txt",     "trend_monthly.svg",
                                         "trend_cumulative.svg", "acf.svg"};
    for (const auto& path : written) {
        CHECK(names.count(path.filename().string()) == 1);
        CHECK(fs::exists(path));
        CHECK(fs::file_size(path) > 0);
    }

    emit_outputs(art, dir_b.path);
    for (const std::string& name : names) {
        CHECK(slurp(dir_a.path / name) == slurp(dir_b.path / name));
    }
}

TEST_CASE("identical configs reproduce identical report text") {
    const RunArtifacts a = run_pipeline(study_config());
    const RunArtifacts b = run_pipeline(study_config());
    CHECK(render_report_text(a) == render_report_text(b));
    CHECK(render_forecast_csv(a.forecast) == render_forecast_csv(b.forecast));
}

TEST_CASE("report text embeds the run configuration") {
    PipelineConfig cfg = study_config();
    cfg.seed = 424242;
    cfg.training.max_epochs = 321;
    const RunArtifacts art = run_pipeline(cfg);
    const std::string text = render_report_text(art);
    CHECK(text.find("424242") != std::string::npos);
    CHECK(text.find("321") != std::string::npos);
    CHECK(text.find("0.70/0.15/0.15") != std::string::npos);
    for (const char* section :
         {"DATA", "MODEL", "TRAINING", "FORECAST", "SDG-3", "CONSISTENCY"}) {
        CHECK(text.find(section) != std::string::npos);
    }
    // the index-span discrepancy is recorded in the output
    CHECK(text.find("27-158") != std::string::npos);
    CHECK(text.find("27 .. 132") != std::string::npos);
    // both published aggregate figures appear verbatim
    CHECK(text.find("145723") != std::string::npos);
    CHECK(text.find("145273") != std::string::npos);
}

TEST_CASE("an empty forecast emits a header-only forecast.csv") {
    RunArtifacts art = run_pipeline(study_config());
    art.forecast = ForecastResult{};
    art.sdg3.reset();
    TempDir dir("narcast_empty_forecast_");
    emit_outputs(art, dir.path);
    CHECK(slurp(dir.path / "forecast.csv") == "period,monthly_cases,aggregated_cases\n");
    const std::string text = slurp(dir.path / "report.txt");
    CHECK(text.find("0 (empty forecast)") != std::string::npos);
}

TEST_CASE("forecast csv rounds to two decimals") {
    ForecastResult forecast;
    forecast.weekly = WeeklySeries{IsoWeek{2022, 9}, {1.0}};
    forecast.monthly = MonthlySeries{{2022, 3}, {128.98765, 739.0}};
    forecast.cumulative = cumulative_from_incident(forecast.monthly, 97135.0);
    const std::string csv = render_forecast_csv(forecast);
    CHECK(csv == "period,monthly_cases,aggregated_cases\n"
                 "2022-03,128.99,97263.99\n"
                 "2022-04,739.00,98002.99\n");
}

TEST_CASE("run_with_model skips training but fills every other artifact") {
    const RunArtifacts trained = run_pipeline(study_config());
    const RunArtifacts art = run_with_model(study_config(), trained.model, "model.json");
    CHECK_FALSE(art.training.has_value());
    CHECK(art.model_source == "model.json");
    CHECK(art.one_step.size() == 104);
    CHECK(art.subset_metrics.size() == 4);
    // same model, same data: forecasts agree with the trained run
    CHECK(render_forecast_csv(art.forecast) == render_forecast_csv(trained.forecast));
    const std::string text = render_report_text(art);
    CHECK(text.find("none (model loaded from file)") != std::string::npos);
}

TEST_CASE("line chart renderer is deterministic and rejects empty input") {
    LineChart chart;
    chart.title = "t";
    chart.series.push_back({"a", "#112233", 0, {1.0, 2.0, 3.0}});
    CHECK(render_line_chart(chart) == render_line_chart(chart));
    CHECK(render_line_chart(chart).find("<svg") == 0);
    LineChart empty;
    CHECK_THROWS_AS(render_line_chart(empty), InputError);
}
