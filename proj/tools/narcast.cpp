#include "narcast/errors.hpp"
#include "narcast/forecaster.hpp"
#include "narcast/metrics.hpp"
#include "narcast/network.hpp"
#include "narcast/report.hpp"
#include "narcast/resample.hpp"
#include "narcast/series.hpp"
#include "narcast/trainer.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace narcast;

SplitRatios parse_ratios(const std::string& text) {
    SplitRatios ratios;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &ratios.train, &ratios.validation,
                    &ratios.test) != 3) {
        throw InputError("ratios must be three comma-separated numbers, e.g. 0.70,0.15,0.15");
    }
    return ratios;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    file << content;
    if (!file) {
        throw IoError("failed writing " + path);
    }
}

void print_training_summary(const TrainingReport& report) {
    std::printf("epochs run      : %d (best %d, stop: %s)\n", report.epochs_run,
                report.best_epoch, to_string(report.stop_reason).c_str());
    std::printf("train mse       : %.6f (initial %.6f)\n", report.train_mse,
                report.initial_train_mse);
    std::printf("validation mse  : %.6f (initial %.6f)\n", report.validation_mse,
                report.initial_validation_mse);
    std::printf("test mse        : %.6f\n", report.test_mse);
    std::printf("pearson R       : train %.5f / validation %.5f / test %.5f\n", report.train_r,
                report.validation_r, report.test_r);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"narcast - NAR neural network forecasting of monthly HIV incidence"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI-style config file");
    app.set_version_flag("--version", "narcast 0.1.0");

    std::string data_path = "data/harp_covid.csv";
    std::string model_path = "model.json";
    std::string out_path;
    std::string out_dir = "out";
    std::string ratios_text = "0.70,0.15,0.15";
    std::string horizon_text = "2030-12";
    std::uint64_t seed = 1;
    int delays = 10;
    int hidden = 10;
    double base_aggregate = registry::kCumulativeBeforeJan2020;
    TrainingConfig training;

    const auto add_data = [&](CLI::App* cmd) {
        cmd->add_option("--data", data_path, "Monthly CSV with header period,cases")
            ->capture_default_str();
    };
    const auto add_split = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Seed for the random split and weight initialization")
            ->capture_default_str();
        cmd->add_option("--ratios", ratios_text, "train,validation,test ratios")
            ->capture_default_str();
    };
    const auto add_training = [&](CLI::App* cmd) {
        cmd->add_option("--delays", delays, "Feedback delay count")->capture_default_str();
        cmd->add_option("--hidden", hidden, "Hidden neuron count")->capture_default_str();
        cmd->add_option("--max-epochs", training.max_epochs, "Training epoch limit")
            ->capture_default_str();
        cmd->add_option("--patience", training.patience,
                        "Consecutive validation increases tolerated before stopping")
            ->capture_default_str();
        cmd->add_option("--lm-lambda0", training.lm_lambda0, "Initial damping factor")
            ->capture_default_str();
        cmd->add_option("--lm-lambda-factor", training.lm_lambda_factor,
                        "Damping multiplier on reject / divisor on accept")
            ->capture_default_str();
        cmd->add_option("--lm-lambda-max", training.lm_lambda_max, "Damping overflow limit")
            ->capture_default_str();
    };
    const auto add_horizon = [&](CLI::App* cmd) {
        cmd->add_option("--horizon", horizon_text, "Final forecast month (YYYY-MM)")
            ->capture_default_str();
        cmd->add_option("--base-aggregate", base_aggregate,
                        "Cumulative cases before the first observed month")
            ->capture_default_str();
    };

    const auto make_config = [&]() {
        PipelineConfig cfg;
        cfg.data_path = data_path;
        cfg.seed = seed;
        cfg.delays = delays;
        cfg.hidden = hidden;
        cfg.training = training;
        cfg.training.ratios = parse_ratios(ratios_text);
        cfg.horizon = parse_month_period(horizon_text);
        cfg.base_aggregate = base_aggregate;
        return cfg;
    };

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Validate and summarize a monthly CSV");
    add_data(ingest);
    ingest->add_option("--base-aggregate", base_aggregate,
                       "Cumulative cases before the first observed month")
        ->capture_default_str();
    ingest->callback([&] {
        const MonthlySeries s = load_monthly_csv(data_path);
        const CumulativeSeries c = cumulative_from_incident(s, base_aggregate);
        double total = 0.0;
        for (double v : s.values) total += v;
        std::printf("rows            : %zu\n", s.size());
        std::printf("months          : %s .. %s\n", to_string(s.origin).c_str(),
                    to_string(s.last_period()).c_str());
        std::printf("total cases     : %.2f\n", total);
        std::printf("final aggregate : %.2f (base %.2f)\n", c.values.back(), c.base);
    });

    // resample
    auto* resample = app.add_subcommand("resample", "Convert a monthly CSV to ISO-week bins");
    add_data(resample);
    resample->add_option("--out", out_path, "Write weekly CSV here instead of stdout");
    resample->callback([&] {
        const MonthlySeries s = load_monthly_csv(data_path);
        const std::string csv = serialize_weekly_csv(monthly_to_weekly(s));
        if (out_path.empty()) {
            std::fputs(csv.c_str(), stdout);
        } else {
            write_text_file(out_path, csv);
            std::printf("wrote %s\n", out_path.c_str());
        }
    });

    // train
    auto* train = app.add_subcommand("train", "Train a model on the resampled weekly series");
    add_data(train);
    add_split(train);
    add_training(train);
    train->add_option("--model-out", model_path, "Where to save the trained model")
        ->capture_default_str();
    train->callback([&] {
        const PipelineConfig cfg = make_config();
        const MonthlySeries s = load_monthly_csv(cfg.data_path);
        const WeeklySeries weekly = monthly_to_weekly(s);
        const LagDataset dataset = build_lag_dataset(weekly, cfg.delays);
        const SplitAssignment split =
            random_split(dataset.size(), cfg.training.ratios, cfg.seed);
        TrainingConfig tc = cfg.training;
        tc.seed = cfg.seed;
        const NarNetwork initial = init_network(cfg.delays, cfg.hidden, cfg.seed + 1);
        const auto [trained, report] = train_levenberg_marquardt(dataset, split, tc, initial);
        save_network(trained, model_path);
        std::printf("model saved     : %s\n", model_path.c_str());
        print_training_summary(report);
    });

    // forecast
    auto* forecast = app.add_subcommand("forecast", "Closed-loop forecast from a saved model");
    add_data(forecast);
    add_split(forecast);
    add_horizon(forecast);
    forecast->add_option("--model", model_path, "Trained model file")->capture_default_str();
    forecast->add_option("--out", out_path, "Write forecast CSV here instead of stdout");
    forecast->callback([&] {
        const NarNetwork model = load_network(model_path);
        const RunArtifacts art = run_with_model(make_config(), model, model_path);
        const std::string csv = render_forecast_csv(art.forecast);
        if (out_path.empty()) {
            std::fputs(csv.c_str(), stdout);
        } else {
            write_text_file(out_path, csv);
            std::printf("wrote %s\n", out_path.c_str());
        }
    });

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Per-subset metrics of a saved model");
    add_data(evaluate);
    add_split(evaluate);
    evaluate->add_option("--model", model_path, "Trained model file")->capture_default_str();
    evaluate->add_option("--out", out_path, "Write metrics CSV here instead of stdout");
    evaluate->callback([&] {
        const NarNetwork model = load_network(model_path);
        const RunArtifacts art = run_with_model(make_config(), model, model_path);
        const std::string csv = render_metrics_csv(art.subset_metrics);
        if (out_path.empty()) {
            std::fputs(csv.c_str(), stdout);
            for (const std::string& finding : art.consistency_findings) {
                std::printf("# %s\n", finding.c_str());
            }
        } else {
            write_text_file(out_path, csv);
            std::printf("wrote %s\n", out_path.c_str());
        }
    });

    // report
    auto* report_cmd =
        app.add_subcommand("report", "Emit the full output file set from a saved model");
    add_data(report_cmd);
    add_split(report_cmd);
    add_horizon(report_cmd);
    report_cmd->add_option("--model", model_path, "Trained model file")->capture_default_str();
    report_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    report_cmd->callback([&] {
        const NarNetwork model = load_network(model_path);
        const RunArtifacts art = run_with_model(make_config(), model, model_path);
        for (const auto& path : emit_outputs(art, out_dir)) {
            std::printf("wrote %s\n", path.string().c_str());
        }
    });

    // pipeline
    auto* pipeline = app.add_subcommand(
        "pipeline", "End-to-end run: ingest, resample, train, forecast, evaluate, report");
    add_data(pipeline);
    add_split(pipeline);
    add_training(pipeline);
    add_horizon(pipeline);
    pipeline->add_option("--out", out_dir, "Output directory")->capture_default_str();
    pipeline->callback([&] {
        const RunArtifacts art = run_pipeline(make_config());
        if (art.training) {
            print_training_summary(*art.training);
        }
        std::printf("final monthly   : %.2f (%s)\n", art.forecast.monthly.values.back(),
                    to_string(art.forecast.monthly.last_period()).c_str());
        std::printf("final aggregate : %.2f\n", art.forecast.cumulative.values.back());
        if (art.sdg3) {
            std::printf("sdg-3 achieved  : %s (ceiling %.2f)\n",
                        art.sdg3->achieved ? "yes" : "no", art.sdg3->required_ceiling);
        }
        for (const auto& path : emit_outputs(art, out_dir)) {
            std::printf("wrote %s\n", path.string().c_str());
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const TrainingError& e) {
        std::fprintf(stderr, "training error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
