#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmbsi/ga.hpp"
#include "pmbsi/metrics.hpp"
#include "pmbsi/series.hpp"

namespace pmbsi {

using Json = nlohmann::ordered_json;

enum class ForecastMode { direct, iterated };

/// Parameters shared by the CLI subcommands. Every field can come from a
/// flat key=value config file; CLI flags win over file values.
struct RunConfig {
    std::string input;              // series file, or directory for bench
    std::vector<int> horizons{1};
    ForecastMode mode = ForecastMode::direct;
    SplitSpec split;
    GAConfig ga;
    SmapeVariant smape_variant = SmapeVariant::standard;
    std::uint64_t seed = 0;
    std::string out;                // report path ("" = stdout only)
    std::string model_path;         // model file (fit output / predict input)
    int steps = 1;                  // predict
    // scan
    int scan_ls_min = 2, scan_ls_max = 10;
    std::vector<double> scan_q{0.01, 0.1, 0.5, 1.0, 2.0};
};

void apply_config_file(RunConfig& cfg, const std::string& path,
                       const std::map<std::string, bool>& flag_seen);

/// fit: shift -> split -> GA per horizon -> validation metrics; writes the
/// JSON report and one model file per horizon.
Json run_fit(const RunConfig& cfg);

/// predict: emits `steps` forecasts beyond the end of the series,
/// offset-corrected. Direct for the model horizon (steps <= horizon), or
/// iterated when the model horizon is 1.
Json run_predict(const RunConfig& cfg);

/// evaluate: applies a saved model over every admissible target of a series
/// and reports MAE/SMAPE with substitution accounting.
Json run_evaluate(const RunConfig& cfg);

/// scan: evaluation-set MAE over an (ls, Q) grid with eta1 = eta2 = 0.
/// Also returns the CSV rows under "csv".
Json run_scan(const RunConfig& cfg);

/// bench: per-series fit on all-but-last-56 values, direct 56-step forecast
/// of the tail, per-series and mean SMAPE, rank against the embedded
/// competition reference table.
Json run_bench(const RunConfig& cfg);

/// The embedded competition reference column: (average SMAPE, competitor).
const std::vector<std::pair<double, std::string>>& reference_ranking();

} // namespace pmbsi
