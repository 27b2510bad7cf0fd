#include "pmbsi/evaluate.hpp"

namespace pmbsi {

SegmentEval forecast_targets_direct(const TimeSeries& ts, const StringParams& params,
                                    std::size_t t_begin, std::size_t t_end) {
    const auto lpr = static_cast<std::size_t>(params.lpr);
    if (t_begin < lpr || t_begin >= t_end || t_end > ts.size())
        throw NumericalError("invalid target range");
    const RangeResult r = predict_range(ts, params, t_begin - lpr, t_end - lpr);
    SegmentEval out;
    out.substitution_rate = r.substitution_rate;
    out.actual.reserve(r.forecasts.size());
    out.forecast.reserve(r.forecasts.size());
    for (std::size_t i = 0; i < r.forecasts.size(); ++i) {
        out.actual.push_back(ts.at(t_begin + i));
        out.forecast.push_back(*r.forecasts[i].value);
        out.substituted.push_back(r.forecasts[i].substituted);
    }
    return out;
}

SegmentEval forecast_targets_iterated(const TimeSeries& ts, const StringParams& params_1step,
                                      std::size_t steps, std::size_t t_begin,
                                      std::size_t t_end) {
    if (t_begin < steps || t_begin >= t_end || t_end > ts.size())
        throw NumericalError("invalid target range");
    SegmentEval out;
    std::size_t substituted = 0;
    for (std::size_t t = t_begin; t < t_end; ++t) {
        const Forecast f = iterated_predict(ts, params_1step, t - steps, steps);
        out.actual.push_back(ts.at(t));
        out.forecast.push_back(*f.value);
        out.substituted.push_back(f.substituted);
        if (f.substituted != Substitution::none) ++substituted;
    }
    out.substitution_rate =
        static_cast<double>(substituted) / static_cast<double>(out.actual.size());
    return out;
}

SegmentEval forecast_targets_naive(const TimeSeries& ts, int lpr,
                                   std::size_t t_begin, std::size_t t_end) {
    const auto h = static_cast<std::size_t>(lpr);
    if (t_begin < h || t_begin >= t_end || t_end > ts.size())
        throw NumericalError("invalid target range");
    SegmentEval out;
    for (std::size_t t = t_begin; t < t_end; ++t) {
        out.actual.push_back(ts.at(t));
        out.forecast.push_back(naive_forecast(ts, t - h, lpr));
        out.substituted.push_back(Substitution::none);
    }
    return out;
}

std::vector<double> unshift_all(const std::vector<double>& v, const TimeSeries& ts) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(x - ts.offset);
    return out;
}

} // namespace pmbsi
