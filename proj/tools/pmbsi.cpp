#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "pmbsi/model_io.hpp"
#include "pmbsi/run.hpp"

namespace {

// exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

void add_common(CLI::App* cmd, pmbsi::RunConfig& cfg, std::string& config_path,
                std::string& mode, std::string& variant, std::string& ratio,
                std::vector<std::string>& bounds) {
    cmd->add_option("--config", config_path, "flat key-value config file (flags win)");
    cmd->add_option("--input", cfg.input, "input series CSV (one value per line)");
    cmd->add_option("--horizon", cfg.horizons, "prediction horizon(s)");
    cmd->add_option("--mode", mode, "direct|iterated")
        ->check(CLI::IsMember({"direct", "iterated"}));
    cmd->add_option("--valid-frac", cfg.split.valid_fraction,
                    "fraction of the series held out for validation");
    cmd->add_option("--train-eval-ratio", ratio, "train:eval weights, e.g. 6:4");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--bounds", bounds,
                    "per-parameter GA bounds, e.g. ls=2:50 q=0.01:30 eta1=-0.96:0.96");
    cmd->add_option("--smape-variant", variant, "standard|literal")
        ->check(CLI::IsMember({"standard", "literal"}));
    cmd->add_option("--out", cfg.out, "write the JSON report to this path");
    cmd->add_option("--population", cfg.ga.population_size, "GA population size");
    cmd->add_option("--tournament", cfg.ga.tournament_size, "GA tournament size");
    cmd->add_option("--stop-no-progress", cfg.ga.stop_no_progress,
                    "stagnant generations before the GA stops");
    cmd->add_option("--mutation-rate", cfg.ga.mutation_rate_initial,
                    "initial mutation rate");
    cmd->add_option("--mutation-prob", cfg.ga.mutation_probability,
                    "per-offspring mutation probability");
}

void finalize(pmbsi::RunConfig& cfg, CLI::App* cmd, const std::string& config_path,
              const std::string& mode, const std::string& variant,
              const std::string& ratio, const std::vector<std::string>& bounds) {
    if (!mode.empty())
        cfg.mode = mode == "iterated" ? pmbsi::ForecastMode::iterated
                                      : pmbsi::ForecastMode::direct;
    if (!variant.empty())
        cfg.smape_variant = variant == "literal" ? pmbsi::SmapeVariant::literal
                                                 : pmbsi::SmapeVariant::standard;
    if (!ratio.empty()) {
        const auto colon = ratio.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--train-eval-ratio", "expected a:b");
        cfg.split.train_weight = std::stod(ratio.substr(0, colon));
        cfg.split.eval_weight = std::stod(ratio.substr(colon + 1));
    }
    for (const std::string& b : bounds) {
        const auto eq = b.find('=');
        const auto colon = b.find(':', eq);
        if (eq == std::string::npos || colon == std::string::npos)
            throw CLI::ValidationError("--bounds", "expected name=min:max");
        const std::string name = b.substr(0, eq);
        const double lo = std::stod(b.substr(eq + 1, colon - eq - 1));
        const double hi = std::stod(b.substr(colon + 1));
        auto& pb = cfg.ga.bounds;
        if (name == "ls") { pb.ls_min = lo; pb.ls_max = hi; }
        else if (name == "q") { pb.q_min = lo; pb.q_max = hi; }
        else if (name == "eta1") { pb.eta1_min = lo; pb.eta1_max = hi; }
        else if (name == "eta2") { pb.eta2_min = lo; pb.eta2_max = hi; }
        else throw CLI::ValidationError("--bounds", "unknown parameter " + name);
    }
    if (!config_path.empty()) {
        std::map<std::string, bool> seen;
        seen["input"] = cmd->count("--input") > 0;
        seen["horizon"] = cmd->count("--horizon") > 0;
        seen["mode"] = cmd->count("--mode") > 0;
        seen["valid_frac"] = cmd->count("--valid-frac") > 0;
        seen["train_eval_ratio"] = cmd->count("--train-eval-ratio") > 0;
        seen["seed"] = cmd->count("--seed") > 0;
        seen["smape_variant"] = cmd->count("--smape-variant") > 0;
        seen["out"] = cmd->count("--out") > 0;
        seen["population_size"] = cmd->count("--population") > 0;
        seen["tournament_size"] = cmd->count("--tournament") > 0;
        seen["stop_no_progress"] = cmd->count("--stop-no-progress") > 0;
        seen["mutation_rate_initial"] = cmd->count("--mutation-rate") > 0;
        seen["mutation_probability"] = cmd->count("--mutation-prob") > 0;
        pmbsi::apply_config_file(cfg, config_path, seen);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PMBSI string-invariant time-series forecaster"};
    app.require_subcommand(1);

    pmbsi::RunConfig cfg;
    std::string config_path, mode, variant, ratio;
    std::vector<std::string> bounds;

    auto* fit = app.add_subcommand("fit", "fit model(s) with the genetic algorithm");
    add_common(fit, cfg, config_path, mode, variant, ratio, bounds);
    fit->add_option("--model", cfg.model_path, "model file to write");

    auto* predict = app.add_subcommand("predict", "forecast beyond the end of a series");
    add_common(predict, cfg, config_path, mode, variant, ratio, bounds);
    predict->add_option("--model", cfg.model_path, "model file to read")->required();
    predict->add_option("--steps", cfg.steps, "number of forecasts to emit");

    auto* evaluate = app.add_subcommand("evaluate", "score a saved model on a series");
    add_common(evaluate, cfg, config_path, mode, variant, ratio, bounds);
    evaluate->add_option("--model", cfg.model_path, "model file to read")->required();

    auto* scan = app.add_subcommand("scan", "evaluation MAE over an (ls, Q) grid");
    add_common(scan, cfg, config_path, mode, variant, ratio, bounds);
    scan->add_option("--ls-min", cfg.scan_ls_min, "smallest string length");
    scan->add_option("--ls-max", cfg.scan_ls_max, "largest string length");
    scan->add_option("--q", cfg.scan_q, "Q values to scan");

    auto* bench = app.add_subcommand("bench", "batch benchmark over a directory of series");
    add_common(bench, cfg, config_path, mode, variant, ratio, bounds);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints help or the error message
        return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success) ? 0 : 1;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        finalize(cfg, active, config_path, mode, variant, ratio, bounds);
        pmbsi::Json report;
        if (active == fit) {
            report = pmbsi::run_fit(cfg);
        } else if (active == predict) {
            report = pmbsi::run_predict(cfg);
            for (const auto& v : report["forecast"])
                std::cout << v.get<double>() << "\n";
            return 0;
        } else if (active == evaluate) {
            report = pmbsi::run_evaluate(cfg);
        } else if (active == scan) {
            report = pmbsi::run_scan(cfg);
        } else {
            report = pmbsi::run_bench(cfg);
        }
        if (cfg.out.empty()) std::cout << report.dump(2) << "\n";
        return 0;
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 1;
    } catch (const pmbsi::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
