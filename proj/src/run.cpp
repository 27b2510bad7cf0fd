#include "pmbsi/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmbsi/evaluate.hpp"
#include "pmbsi/metrics.hpp"
#include "pmbsi/model_io.hpp"
#include "pmbsi/predictor.hpp"

namespace pmbsi {

namespace fs = std::filesystem;

namespace {

const char* kSmapeNote =
    "standard variant is the default: the literal formula caps at 50 and cannot "
    "reproduce published values above that, while competition scores use the "
    "standard definition; pass --smape-variant literal for the capped formula";

TimeSeries load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read input: " + path);
    return load_series(in);
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

Json params_json(const StringParams& p) {
    return Json{{"ls", p.ls}, {"lpr", p.lpr}, {"eta1", p.eta1},
                {"eta2", p.eta2}, {"q", p.q}};
}

const char* mode_name(ForecastMode m) {
    return m == ForecastMode::direct ? "direct" : "iterated";
}

const char* variant_name(SmapeVariant v) {
    return v == SmapeVariant::standard ? "standard" : "literal";
}

// Metrics block on the original (unshifted) scale, plus the dumped vectors
// every number is recomputable from.
Json segment_json(const SegmentEval& se, const TimeSeries& shifted, SmapeVariant variant) {
    const std::vector<double> actual = unshift_all(se.actual, shifted);
    const std::vector<double> forecast = unshift_all(se.forecast, shifted);
    return Json{{"mae", mae(actual, forecast)},
                {"smape", smape(actual, forecast, variant)},
                {"n", actual.size()},
                {"nan_pct", 100.0 * se.substitution_rate},
                {"actual", actual},
                {"forecast", forecast}};
}

GAConfig ga_for_horizon(const RunConfig& cfg, int lpr, std::uint64_t seed) {
    GAConfig ga = cfg.ga;
    ga.seed = seed;
    // widen the ls range when the horizon outgrows the default bounds
    if (ga.bounds.ls_max <= static_cast<double>(lpr))
        ga.bounds.ls_max = static_cast<double>(lpr) + 20.0;
    if (ga.bounds.ls_min <= static_cast<double>(lpr))
        ga.bounds.ls_min = static_cast<double>(lpr) + 1.0;
    return ga;
}

void write_report(const Json& report, const std::string& out) {
    if (out.empty()) return;
    std::ofstream f(out);
    if (!f) throw DataError("cannot write report: " + out);
    f << report.dump(2) << "\n";
}

} // namespace

const std::vector<std::pair<double, std::string>>& reference_ranking() {
    static const std::vector<std::pair<double, std::string>> table = {
        {19.9, "Wildi"},          {20.4, "Andrawis"},      {20.5, "Vogel"},
        {20.6, "D'yakonov"},      {21.1, "Noncheva"},      {21.7, "Rauch"},
        {21.8, "Luna"},           {21.9, "Lagoo"},         {22.1, "Wichard"},
        {22.3, "Gao"},            {23.7, "Puma-Villanueva"}, {24.1, "Autobox(Reilly)"},
        {24.5, "Lewicke"},        {24.8, "Brentnall"},     {25.3, "Dang"},
        {25.3, "Pasero"},         {25.3, "Adeodato"},      {26.8, "not published"},
        {27.3, "not published"},  {28.1, "Tung"},          {28.8, "Naive Seasonal"},
        {33.1, "not published"},  {36.3, "not published"}, {38.8, "PMBSI (reference)"},
        {41.3, "not published"},  {45.4, "not published"}, {48.4, "naive Level"},
        {53.5, "not published"},
    };
    return table;
}

void apply_config_file(RunConfig& cfg, const std::string& path,
                       const std::map<std::string, bool>& flag_seen) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read config file: " + path);
    auto from_cli = [&](const std::string& key) {
        auto it = flag_seen.find(key);
        return it != flag_seen.end() && it->second;
    };
    auto parse_range = [](const std::string& v, double& lo, double& hi) {
        const auto colon = v.find(':');
        if (colon == std::string::npos) throw DataError("bounds must be min:max");
        lo = std::stod(v.substr(0, colon));
        hi = std::stod(v.substr(colon + 1));
    };
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key, value;
        if (!(ls >> key >> value)) continue;
        // strip optional '=' separators
        if (value == "=") { if (!(ls >> value)) continue; }
        if (from_cli(key)) continue; // flags win
        if (key == "input") cfg.input = value;
        else if (key == "out") cfg.out = value;
        else if (key == "model") cfg.model_path = value;
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "steps") cfg.steps = std::stoi(value);
        else if (key == "mode")
            cfg.mode = value == "iterated" ? ForecastMode::iterated : ForecastMode::direct;
        else if (key == "smape_variant")
            cfg.smape_variant = value == "literal" ? SmapeVariant::literal
                                                   : SmapeVariant::standard;
        else if (key == "valid_frac") cfg.split.valid_fraction = std::stod(value);
        else if (key == "train_eval_ratio") {
            double a, b;
            parse_range(value, a, b);
            cfg.split.train_weight = a;
            cfg.split.eval_weight = b;
        } else if (key == "horizon") {
            cfg.horizons.clear();
            std::istringstream hs(value);
            std::string tok;
            while (std::getline(hs, tok, ',')) cfg.horizons.push_back(std::stoi(tok));
        } else if (key == "population_size") cfg.ga.population_size = std::stoi(value);
        else if (key == "tournament_size") cfg.ga.tournament_size = std::stoi(value);
        else if (key == "elite_fraction") cfg.ga.elite_fraction = std::stod(value);
        else if (key == "stop_no_progress") cfg.ga.stop_no_progress = std::stoi(value);
        else if (key == "mutation_rate_initial")
            cfg.ga.mutation_rate_initial = std::stod(value);
        else if (key == "mutation_probability")
            cfg.ga.mutation_probability = std::stod(value);
        else if (key == "bounds_ls") parse_range(value, cfg.ga.bounds.ls_min, cfg.ga.bounds.ls_max);
        else if (key == "bounds_q") parse_range(value, cfg.ga.bounds.q_min, cfg.ga.bounds.q_max);
        else if (key == "bounds_eta1")
            parse_range(value, cfg.ga.bounds.eta1_min, cfg.ga.bounds.eta1_max);
        else if (key == "bounds_eta2")
            parse_range(value, cfg.ga.bounds.eta2_min, cfg.ga.bounds.eta2_max);
        else throw DataError("unknown config key: " + key);
    }
}

Json run_fit(const RunConfig& cfg) {
    const TimeSeries raw = load_file(cfg.input);
    const TimeSeries shifted = shift_positive(raw, default_shift_epsilon(raw));
    const SplitBounds cut = split_points(shifted.size(), cfg.split);
    TimeSeries train, eval_seg;
    train.offset = eval_seg.offset = shifted.offset;
    train.values.assign(shifted.values.begin(), shifted.values.begin() + cut.train_end);
    eval_seg.values.assign(shifted.values.begin() + cut.train_end,
                           shifted.values.begin() + cut.eval_end);

    Json report;
    report["tool_version"] = kToolVersion;
    report["command"] = "fit";
    report["input"] = cfg.input;
    report["seed"] = cfg.seed;
    report["mode"] = mode_name(cfg.mode);
    report["smape_variant"] = variant_name(cfg.smape_variant);
    report["smape_note"] = kSmapeNote;
    report["offset"] = shifted.offset;
    report["split"] = Json{{"train_end", cut.train_end},
                           {"eval_end", cut.eval_end},
                           {"n", shifted.size()}};
    report["horizons"] = Json::array();
    Json timing = Json::object();
    timing["generated_at"] = timestamp_now();
    timing["wall_time_s"] = Json::array();

    for (std::size_t hi = 0; hi < cfg.horizons.size(); ++hi) {
        const int h = cfg.horizons[hi];
        if (h < 1) throw DataError("horizon must be >= 1");
        const int fit_lpr = cfg.mode == ForecastMode::iterated ? 1 : h;
        const GAConfig ga = ga_for_horizon(cfg, fit_lpr, cfg.seed + hi);
        const EvolveResult evo = evolve(train, eval_seg, fit_lpr, ga);

        const auto ls = static_cast<std::size_t>(evo.params.ls);
        SegmentEval eval_se, valid_se;
        if (cfg.mode == ForecastMode::iterated) {
            const auto st = static_cast<std::size_t>(h);
            eval_se = forecast_targets_iterated(
                shifted, evo.params, st, std::max(cut.train_end, ls + st), cut.eval_end);
            valid_se = forecast_targets_iterated(
                shifted, evo.params, st, std::max(cut.eval_end, ls + st), shifted.size());
        } else {
            const auto st = static_cast<std::size_t>(h);
            eval_se = forecast_targets_direct(
                shifted, evo.params, std::max(cut.train_end, ls + st), cut.eval_end);
            valid_se = forecast_targets_direct(
                shifted, evo.params, std::max(cut.eval_end, ls + st), shifted.size());
        }

        std::string model_path = cfg.model_path.empty() ? "model.pmbsi" : cfg.model_path;
        if (cfg.horizons.size() > 1) model_path += ".h" + std::to_string(h);
        ModelFile model;
        model.params = evo.params;
        model.bounds = ga.bounds;
        model.offset = shifted.offset;
        model.seed = ga.seed;
        save_model_file(model, model_path);

        Json hj;
        hj["horizon"] = h;
        hj["params"] = params_json(evo.params);
        hj["model_file"] = model_path;
        hj["ga"] = Json{{"generations", evo.trace.generation_count},
                        {"train_fitness", evo.train_fitness},
                        {"champion_eval_mae", evo.eval_mae},
                        {"final_best_fitness", evo.trace.generations.back().best_fitness}};
        hj["eval"] = segment_json(eval_se, shifted, cfg.smape_variant);
        hj["valid"] = segment_json(valid_se, shifted, cfg.smape_variant);
        report["horizons"].push_back(std::move(hj));
        timing["wall_time_s"].push_back(evo.trace.wall_time_s);
    }
    report["timing"] = std::move(timing);
    write_report(report, cfg.out);
    if (!cfg.out.empty()) {
        // forecast tables as CSV for plotting
        std::ofstream csv(cfg.out + ".csv");
        if (!csv) throw DataError("cannot write CSV table: " + cfg.out + ".csv");
        csv << "horizon,segment,index,actual,forecast\n";
        csv.precision(17);
        for (const Json& hj : report["horizons"])
            for (const char* seg : {"eval", "valid"}) {
                const Json& block = hj[seg];
                for (std::size_t i = 0; i < block["actual"].size(); ++i)
                    csv << hj["horizon"].get<int>() << "," << seg << "," << i << ","
                        << block["actual"][i].get<double>() << ","
                        << block["forecast"][i].get<double>() << "\n";
            }
    }
    return report;
}

Json run_predict(const RunConfig& cfg) {
    const ModelFile model = load_model_file(cfg.model_path);
    TimeSeries ts = load_file(cfg.input);
    ts.offset = model.offset;
    for (double& v : ts.values) v += model.offset;
    const auto ls = static_cast<std::size_t>(model.params.ls);
    if (ts.size() < ls + 1) throw DataError("series shorter than string length");
    if (cfg.steps < 1) throw DataError("steps must be >= 1");

    std::vector<double> values;
    std::vector<bool> substituted;
    if (model.params.lpr == 1 && cfg.steps > 1) {
        // iterated: append each 1-step forecast and continue
        TimeSeries work = ts;
        for (int s = 0; s < cfg.steps; ++s) {
            const Forecast f = iterated_predict(work, model.params, work.size() - 1, 1);
            work.values.push_back(*f.value);
            values.push_back(unshift(*f.value, ts));
            substituted.push_back(f.substituted != Substitution::none);
        }
    } else {
        if (cfg.steps > model.params.lpr)
            throw DataError("steps exceed the model horizon; fit a 1-step model "
                            "for iterated prediction");
        const auto lpr = static_cast<std::size_t>(model.params.lpr);
        const std::size_t begin = ts.size() - lpr;
        const RangeResult r = predict_range(ts, model.params, begin,
                                            begin + static_cast<std::size_t>(cfg.steps));
        for (const Forecast& f : r.forecasts) {
            values.push_back(unshift(*f.value, ts));
            substituted.push_back(f.substituted != Substitution::none);
        }
    }

    Json report;
    report["tool_version"] = kToolVersion;
    report["command"] = "predict";
    report["model_file"] = cfg.model_path;
    report["params"] = params_json(model.params);
    report["steps"] = cfg.steps;
    report["forecast"] = values;
    report["substituted"] = substituted;
    write_report(report, cfg.out);
    return report;
}

Json run_evaluate(const RunConfig& cfg) {
    const ModelFile model = load_model_file(cfg.model_path);
    TimeSeries ts = load_file(cfg.input);
    ts.offset = model.offset;
    for (double& v : ts.values) v += model.offset;
    const auto ls = static_cast<std::size_t>(model.params.ls);
    const auto lpr = static_cast<std::size_t>(model.params.lpr);
    if (ts.size() < ls + lpr + 1) throw DataError("series shorter than string length");

    const SegmentEval se = forecast_targets_direct(ts, model.params, ls + lpr, ts.size());
    Json report;
    report["tool_version"] = kToolVersion;
    report["command"] = "evaluate";
    report["input"] = cfg.input;
    report["model_file"] = cfg.model_path;
    report["params"] = params_json(model.params);
    report["smape_variant"] = variant_name(cfg.smape_variant);
    report["smape_note"] = kSmapeNote;
    report["metrics"] = segment_json(se, ts, cfg.smape_variant);
    write_report(report, cfg.out);
    return report;
}

Json run_scan(const RunConfig& cfg) {
    if (cfg.horizons.size() != 1) throw DataError("scan takes exactly one horizon");
    const int h = cfg.horizons.front();
    const TimeSeries raw = load_file(cfg.input);
    const TimeSeries shifted = shift_positive(raw, default_shift_epsilon(raw));
    const SplitBounds cut = split_points(shifted.size(), cfg.split);
    if (cfg.scan_ls_min > cfg.scan_ls_max || cfg.scan_q.empty())
        throw DataError("empty scan range");

    Json rows = Json::array();
    Json skipped = Json::array();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_row = 0;
    std::ostringstream csv;
    csv << "ls,q,eval_mae,is_min\n";
    for (int ls = cfg.scan_ls_min; ls <= cfg.scan_ls_max; ++ls) {
        if (ls <= h) {
            skipped.push_back(Json{{"ls", ls}, {"reason", "ls must exceed horizon"}});
            continue;
        }
        for (double q : cfg.scan_q) {
            StringParams p;
            p.ls = ls;
            p.lpr = h;
            p.q = q;
            const std::size_t t_begin =
                std::max(cut.train_end, static_cast<std::size_t>(ls + h));
            double cell = std::numeric_limits<double>::infinity();
            if (t_begin < cut.eval_end) {
                const SegmentEval se =
                    forecast_targets_direct(shifted, p, t_begin, cut.eval_end);
                cell = mae(se.actual, se.forecast);
            }
            if (cell < best) {
                best = cell;
                best_row = rows.size();
            }
            rows.push_back(Json{{"ls", ls}, {"q", q}, {"eval_mae", cell}});
        }
    }
    if (rows.empty()) throw DataError("scan grid is empty after skipping infeasible ls");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i]["is_min"] = i == best_row;
        csv << rows[i]["ls"].get<int>() << "," << rows[i]["q"].get<double>() << ","
            << rows[i]["eval_mae"].get<double>() << "," << (i == best_row ? 1 : 0) << "\n";
    }

    Json report;
    report["tool_version"] = kToolVersion;
    report["command"] = "scan";
    report["input"] = cfg.input;
    report["horizon"] = h;
    report["rows"] = std::move(rows);
    report["skipped"] = std::move(skipped);
    report["min_eval_mae"] = best;
    report["csv"] = csv.str();
    write_report(report, cfg.out);
    return report;
}

Json run_bench(const RunConfig& cfg) {
    if (!fs::is_directory(cfg.input)) throw DataError("bench input must be a directory");
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(cfg.input))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("bench directory is empty");

    const int h = cfg.horizons.size() == 1 ? cfg.horizons.front() : 56;
    const auto tail = static_cast<std::size_t>(h);

    Json per_series = Json::array();
    std::vector<double> smapes;
    for (std::size_t idx = 0; idx < files.size(); ++idx) {
        Json row;
        row["file"] = fs::path(files[idx]).filename().string();
        try {
            const TimeSeries raw = load_file(files[idx]);
            if (raw.size() < tail + 3) throw DataError("series too short for horizon");
            TimeSeries head;
            head.values.assign(raw.values.begin(), raw.values.end() - tail);
            std::vector<double> tail_actual(raw.values.end() - tail, raw.values.end());

            const TimeSeries shifted = shift_positive(head, default_shift_epsilon(head));
            const double ratio_sum = cfg.split.train_weight + cfg.split.eval_weight;
            const auto train_end = static_cast<std::size_t>(std::floor(
                static_cast<double>(shifted.size()) * cfg.split.train_weight / ratio_sum));
            if (train_end == 0 || train_end >= shifted.size())
                throw DataError("degenerate split");
            TimeSeries train, eval_seg;
            train.offset = eval_seg.offset = shifted.offset;
            train.values.assign(shifted.values.begin(), shifted.values.begin() + train_end);
            eval_seg.values.assign(shifted.values.begin() + train_end, shifted.values.end());

            const GAConfig ga = ga_for_horizon(cfg, h, cfg.seed + idx);
            const EvolveResult evo = evolve(train, eval_seg, h, ga);

            // targets head_n..head_n+h-1 come from tau0 = head_n-h..head_n-1
            const RangeResult r =
                predict_range(shifted, evo.params, shifted.size() - tail, shifted.size());
            std::vector<double> forecast;
            for (const Forecast& f : r.forecasts)
                forecast.push_back(unshift(*f.value, shifted));

            const double s = smape(tail_actual, forecast, SmapeVariant::standard);
            smapes.push_back(s);
            row["smape"] = s;
            row["params"] = params_json(evo.params);
            row["nan_pct"] = 100.0 * r.substitution_rate;
            row["forecast"] = forecast;
            row["actual"] = tail_actual;
        } catch (const std::exception& e) {
            row["error"] = e.what();
        }
        per_series.push_back(std::move(row));
    }

    Json report;
    report["tool_version"] = kToolVersion;
    report["command"] = "bench";
    report["input"] = cfg.input;
    report["seed"] = cfg.seed;
    report["horizon"] = h;
    report["series_total"] = files.size();
    report["series_failed"] = files.size() - smapes.size();
    if (!smapes.empty()) {
        double mean = 0;
        for (double s : smapes) mean += s;
        mean /= static_cast<double>(smapes.size());
        report["mean_smape"] = mean;
        std::size_t rank = 1;
        for (const auto& [score, name] : reference_ranking())
            if (score < mean) ++rank;
        report["reference_rank"] = rank;
    }
    Json ref = Json::array();
    for (const auto& [score, name] : reference_ranking())
        ref.push_back(Json{{"smape", score}, {"competitor", name}});
    report["reference_ranking"] = std::move(ref);
    report["series"] = std::move(per_series);
    write_report(report, cfg.out);
    return report;
}

} // namespace pmbsi
