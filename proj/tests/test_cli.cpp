#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

const std::string kCli = NARCAST_CLI_PATH;
const std::string kData = std::string(NARCAST_DATA_DIR) + "/harp_covid.csv";

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / (name + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    const std::string command = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

} // namespace

TEST_CASE("help and version exit cleanly") {
    CHECK(run("--help") == 0);
    CHECK(run("pipeline --help") == 0);
    CHECK(run("--version") == 0);
}

TEST_CASE("ingest validates the bundled data") {
    CHECK(run("ingest --data " + kData) == 0);
}

TEST_CASE("pipeline emits the file set and is byte-deterministic") {
    TempDir a("narcast_cli_a_");
    TempDir b("narcast_cli_b_");
    CHECK(run("pipeline --data " + kData + " --seed 7 --out " + (a.path / "run").string()) == 0);
    CHECK(run("pipeline --data " + kData + " --seed 7 --out " + (b.path / "run").string()) == 0);

    for (const char* name : {"forecast.csv", "weekly.csv", "metrics.csv", "comparison.csv",
                             "report.txt", "trend_monthly.svg", "trend_cumulative.svg",
                             "acf.svg"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(a.path / "run" / name));
        CHECK(slurp(a.path / "run" / name) == slurp(b.path / "run" / name));
    }

    // a different seed changes the forecast
    TempDir c("narcast_cli_c_");
    CHECK(run("pipeline --data " + kData + " --seed 8 --out " + (c.path / "run").string()) == 0);
    CHECK(slurp(a.path / "run" / "forecast.csv") != slurp(c.path / "run" / "forecast.csv"));
}

TEST_CASE("resample writes the 114-row weekly csv") {
    TempDir dir("narcast_cli_resample_");
    const fs::path out = dir.path / "weekly.csv";
    CHECK(run("resample --data " + kData + " --out " + out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(count_lines(csv) == 115); // header + 114 bins
    CHECK(csv.rfind("iso_year,iso_week,cases\n", 0) == 0);
}

TEST_CASE("train, forecast, evaluate, and report run from a saved model") {
    TempDir dir("narcast_cli_model_");
    const fs::path model = dir.path / "model.json";
    CHECK(run("train --data " + kData + " --seed 3 --model-out " + model.string()) == 0);
    REQUIRE(fs::exists(model));

    const fs::path forecast = dir.path / "forecast.csv";
    CHECK(run("forecast --data " + kData + " --seed 3 --model " + model.string() + " --out " +
              forecast.string()) == 0);
    const std::string csv = slurp(forecast);
    CHECK(csv.rfind("period,monthly_cases,aggregated_cases\n", 0) == 0);
    CHECK(count_lines(csv) == 107); // header + 106 months

    CHECK(run("evaluate --data " + kData + " --seed 3 --model " + model.string()) == 0);

    const fs::path out = dir.path / "report";
    CHECK(run("report --data " + kData + " --seed 3 --model " + model.string() + " --out " +
              out.string()) == 0);
    CHECK(fs::exists(out / "report.txt"));
    CHECK(slurp(out / "report.txt").find("model loaded from file") != std::string::npos);
}

TEST_CASE("exit codes follow the error taxonomy") {
    TempDir dir("narcast_cli_errors_");

    // input error: malformed csv
    const fs::path bad = dir.path / "bad.csv";
    std::ofstream(bad) << "period,cases\n2020-01,5\n2020-03,6\n";
    CHECK(run("ingest --data " + bad.string()) == 1);

    // input error: unknown flag
    CHECK(run("pipeline --no-such-flag") == 1);

    // i/o error: missing files
    CHECK(run("ingest --data " + (dir.path / "missing.csv").string()) == 3);
    CHECK(run("forecast --model " + (dir.path / "missing.json").string() + " --data " + kData) ==
          3);

    // input error: negative counts
    const fs::path negative = dir.path / "negative.csv";
    std::ofstream(negative) << "period,cases\n2020-01,-5\n";
    CHECK(run("ingest --data " + negative.string()) == 1);
}
