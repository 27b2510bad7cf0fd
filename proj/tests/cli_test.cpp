#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "pmbsi/model_io.hpp"
#include "pmbsi/run.hpp"

using namespace pmbsi;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "pmbsi_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write_sinusoid(const fs::path& dir) {
    const fs::path p = dir / "sinusoid.csv";
    std::ofstream out(p);
    out.precision(17);
    for (int i = 0; i <= 50; ++i) out << std::sin(2 * M_PI * i / 50.0) << "\n";
    return p.string();
}

std::string write_constant(const fs::path& dir, const std::string& name, int n, double c) {
    const fs::path p = dir / name;
    std::ofstream out(p);
    for (int i = 0; i < n; ++i) out << c << "\n";
    return p.string();
}

RunConfig sinusoid_config(const fs::path& dir) {
    RunConfig cfg;
    cfg.input = write_sinusoid(dir);
    cfg.split.valid_fraction = 25.0 / 51.0;
    cfg.ga.stop_no_progress = 10; // keep unit tests fast
    cfg.model_path = (dir / "model.pmbsi").string();
    cfg.seed = 5;
    return cfg;
}

} // namespace

TEST_CASE("run_fit produces a self-consistent report and a loadable model") {
    const fs::path dir = temp_dir();
    RunConfig cfg = sinusoid_config(dir);
    cfg.out = (dir / "fit.json").string();
    const Json report = run_fit(cfg);

    CHECK(report["tool_version"] == kToolVersion);
    REQUIRE(report["horizons"].size() == 1);
    const Json& h = report["horizons"][0];
    CHECK(h["horizon"] == 1);
    CHECK(h["valid"]["n"].get<std::size_t>() == 25);

    // every reported number is recomputable from the dumped vectors
    const auto actual = h["valid"]["actual"].get<std::vector<double>>();
    const auto forecast = h["valid"]["forecast"].get<std::vector<double>>();
    double sum = 0;
    for (std::size_t i = 0; i < actual.size(); ++i)
        sum += std::abs(actual[i] - forecast[i]);
    CHECK(h["valid"]["mae"].get<double>() ==
          doctest::Approx(sum / actual.size()).epsilon(1e-12));

    const ModelFile model = load_model_file(cfg.model_path);
    CHECK(model.params.ls == h["params"]["ls"].get<int>());
    CHECK(model.offset == report["offset"].get<double>());
    CHECK(fs::exists(cfg.out));
}

TEST_CASE("run_fit is deterministic modulo the timing block") {
    const fs::path dir = temp_dir();
    RunConfig cfg = sinusoid_config(dir);
    Json a = run_fit(cfg);
    Json b = run_fit(cfg);
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("run_predict: constant model emits constant output, steps honored") {
    const fs::path dir = temp_dir();
    RunConfig cfg;
    cfg.input = write_constant(dir, "const.csv", 60, 7.5);
    cfg.model_path = (dir / "const_model.pmbsi").string();
    ModelFile model;
    model.params = StringParams{5, 1, 0.2, 0.5, 1.3};
    save_model_file(model, cfg.model_path);

    cfg.steps = 6;
    const Json report = run_predict(cfg);
    const auto values = report["forecast"].get<std::vector<double>>();
    REQUIRE(values.size() == 6);
    for (double v : values) CHECK(v == 7.5);
}

TEST_CASE("run_predict with steps beyond a multi-step model's horizon is rejected") {
    const fs::path dir = temp_dir();
    RunConfig cfg;
    cfg.input = write_constant(dir, "const2.csv", 60, 1.0);
    cfg.model_path = (dir / "h3_model.pmbsi").string();
    ModelFile model;
    model.params = StringParams{6, 3, 0.0, 0.5, 1.0};
    save_model_file(model, cfg.model_path);
    cfg.steps = 5;
    CHECK_THROWS_AS(run_predict(cfg), DataError);
    cfg.steps = 3;
    CHECK(run_predict(cfg)["forecast"].size() == 3);
}

TEST_CASE("run_evaluate scores a saved model over a series") {
    const fs::path dir = temp_dir();
    RunConfig cfg;
    cfg.input = write_constant(dir, "const3.csv", 40, 2.0);
    cfg.model_path = (dir / "eval_model.pmbsi").string();
    ModelFile model;
    model.params = StringParams{4, 1, 0.1, 0.4, 1.0};
    save_model_file(model, cfg.model_path);
    const Json report = run_evaluate(cfg);
    CHECK(report["metrics"]["mae"].get<double>() == 0.0);
    CHECK(report["metrics"]["smape"].get<double>() == 0.0);
}

TEST_CASE("run_scan: a 1x1 grid equals a direct evaluation") {
    const fs::path dir = temp_dir();
    RunConfig cfg = sinusoid_config(dir);
    cfg.scan_ls_min = 3;
    cfg.scan_ls_max = 3;
    cfg.scan_q = {1.0};
    const Json report = run_scan(cfg);
    REQUIRE(report["rows"].size() == 1);
    CHECK(report["rows"][0]["is_min"] == true);
    CHECK(report["min_eval_mae"].get<double>() ==
          report["rows"][0]["eval_mae"].get<double>());
    CHECK(report["csv"].get<std::string>().find("ls,q,eval_mae,is_min") == 0);
}

TEST_CASE("run_scan skips infeasible string lengths with a note") {
    const fs::path dir = temp_dir();
    RunConfig cfg = sinusoid_config(dir);
    cfg.horizons = {3};
    cfg.scan_ls_min = 2;
    cfg.scan_ls_max = 5;
    cfg.scan_q = {1.0};
    const Json report = run_scan(cfg);
    CHECK(report["skipped"].size() == 2); // ls = 2, 3
    CHECK(report["rows"].size() == 2);    // ls = 4, 5
}

TEST_CASE("run_bench on constant series reports zero mean SMAPE") {
    const fs::path dir = temp_dir() / "bench_const";
    fs::create_directories(dir);
    write_constant(dir, "a.csv", 200, 3.0);
    write_constant(dir, "b.csv", 200, 5.0);
    RunConfig cfg;
    cfg.input = dir.string();
    cfg.horizons = {8}; // small horizon keeps the GA fast
    cfg.ga.stop_no_progress = 5;
    const Json report = run_bench(cfg);
    CHECK(report["series_failed"] == 0);
    CHECK(report["mean_smape"].get<double>() == 0.0);
    CHECK(report["series"].size() == 2);
    CHECK(report["reference_ranking"].size() == 28);
}

TEST_CASE("single-series bench aggregate equals that series' SMAPE") {
    const fs::path dir = temp_dir() / "bench_single";
    fs::create_directories(dir);
    write_constant(dir, "only.csv", 150, 2.0);
    RunConfig cfg;
    cfg.input = dir.string();
    cfg.horizons = {8};
    cfg.ga.stop_no_progress = 5;
    const Json report = run_bench(cfg);
    REQUIRE(report["series"].size() == 1);
    CHECK(report["mean_smape"] == report["series"][0]["smape"]);
}

TEST_CASE("config file values apply and CLI-seen flags win") {
    const fs::path dir = temp_dir();
    const fs::path conf = dir / "run.conf";
    {
        std::ofstream out(conf);
        out << "# comment\n";
        out << "seed 42\n";
        out << "valid_frac 0.3\n";
        out << "train_eval_ratio 7:3\n";
        out << "horizon 2,3\n";
        out << "bounds_q 0.5:4\n";
    }
    RunConfig cfg;
    cfg.seed = 7; // pretend --seed was given
    apply_config_file(cfg, conf.string(), {{"seed", true}});
    CHECK(cfg.seed == 7);
    CHECK(cfg.split.valid_fraction == 0.3);
    CHECK(cfg.split.train_weight == 7.0);
    CHECK(cfg.horizons == std::vector<int>{2, 3});
    CHECK(cfg.ga.bounds.q_min == 0.5);
    CHECK(cfg.ga.bounds.q_max == 4.0);
    CHECK_THROWS_AS(apply_config_file(cfg, (dir / "missing.conf").string(), {}), DataError);
}
