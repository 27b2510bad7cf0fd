#include "pmbsi/predictor.hpp"

#include <cmath>
#include <stdexcept>

#include "pmbsi/stringmap.hpp"

namespace pmbsi {

namespace {

constexpr double kDenominatorFloor = 1e-12;

// C(tau, lambda) with a precomputed weight table.
double invariant_at(const TimeSeries& ts, std::size_t tau, const StringParams& params,
                    const WeightTable& w) {
    const double e1 = params.eta1, e2 = params.eta2, q = params.q;
    const double p0 = ts.at(tau);
    const double p_end = ts.at(tau + static_cast<std::size_t>(params.ls));
    double sum = 0.0;
    for (int h = 0; h <= params.lambda(); ++h) {
        const double ph = ts.at(tau + static_cast<std::size_t>(h));
        const double b1 = q_bracket(p0, ph, q);
        const double b2 = q_bracket(ph, p_end, q);
        sum += w.at(h) * ((1.0 - e1) * (1.0 - e2) * b1 * b2 + e1 * (1.0 - e2) * b1 + e2 * b2);
    }
    return sum;
}

Forecast predict_core(const TimeSeries& ts, std::size_t tau0, const StringParams& params,
                      const WeightTable& w) {
    const auto ls = static_cast<std::size_t>(params.ls);
    const auto lambda = static_cast<std::size_t>(params.lambda());
    if (tau0 < ls || tau0 >= ts.size())
        throw std::out_of_range("window out of bounds");
    const std::size_t tau_prime = tau0 - lambda;

    // Constant window: every bracket vanishes and the closed form reduces to
    // A5/(-A4) = p^Q, i.e. the constant itself, or 0/0 when eta2 == 0.
    bool constant_window = true;
    for (std::size_t i = tau0 - ls; i <= tau0 && constant_window; ++i)
        constant_window = ts.at(i) == ts.at(tau0);
    if (constant_window) {
        Forecast f;
        f.horizon = params.lpr;
        if (std::abs(params.eta2) * w.sum_w >= kDenominatorFloor)
            f.value = ts.at(tau0);
        return f;
    }

    const double e1 = params.eta1, e2 = params.eta2, q = params.q;
    const double p0 = ts.at(tau_prime);
    double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0;
    for (std::size_t h = 0; h <= lambda; ++h) {
        const double ph = ts.at(tau_prime + h);
        const double wh = w.at(static_cast<int>(h));
        const double b1 = q_bracket(p0, ph, q);
        const double ph_q = std::exp(q * std::log(ph));
        a1 += (1.0 - e1) * (1.0 - e2) * wh * b1;
        a2 -= (1.0 - e1) * (1.0 - e2) * wh * b1 * ph_q;
        a3 += e1 * (1.0 - e2) * wh * b1;
        a4 += e2 * wh;
        a5 -= e2 * wh * ph_q;
    }
    const double c_hist = invariant_at(ts, tau0 - ls, params, w);

    Forecast f;
    f.horizon = params.lpr;
    const double denom = c_hist - a1 - a3 - a4;
    if (std::abs(denom) < kDenominatorFloor) return f;
    const double ratio = (a2 + a5) / denom;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) return f;
    const double x = std::exp(std::log(ratio) / q);
    if (!std::isfinite(x)) return f;
    f.value = x;
    return f;
}

} // namespace

Forecast predict_one(const TimeSeries& ts, std::size_t tau0, const StringParams& params) {
    params.validate();
    return predict_core(ts, tau0, params, WeightTable::make(params.ls, params.lpr));
}

RangeResult predict_range(const TimeSeries& ts, const StringParams& params,
                          std::size_t begin, std::size_t end) {
    params.validate();
    const WeightTable w = WeightTable::make(params.ls, params.lpr);
    RangeResult out;
    out.forecasts.reserve(end > begin ? end - begin : 0);
    std::optional<double> last_valid;
    std::size_t undefined_count = 0;
    for (std::size_t tau0 = begin; tau0 < end; ++tau0) {
        Forecast f = predict_core(ts, tau0, params, w);
        if (f.value) {
            last_valid = f.value;
        } else {
            ++undefined_count;
            if (params.lpr == 1) {
                f.value = ts.at(tau0);
                f.substituted = Substitution::naive_fallback;
            } else if (last_valid) {
                f.value = last_valid;
                f.substituted = Substitution::last_valid_fallback;
            } else {
                f.value = ts.at(tau0);
                f.substituted = Substitution::naive_fallback;
            }
        }
        out.forecasts.push_back(f);
    }
    if (!out.forecasts.empty())
        out.substitution_rate =
            static_cast<double>(undefined_count) / static_cast<double>(out.forecasts.size());
    return out;
}

Forecast iterated_predict(const TimeSeries& ts, const StringParams& params_1step,
                          std::size_t tau0, std::size_t steps) {
    params_1step.validate();
    if (params_1step.lpr != 1)
        throw NumericalError("iterated prediction requires a 1-step model");
    if (steps == 0) throw NumericalError("steps must be >= 1");
    if (tau0 >= ts.size()) throw std::out_of_range("window out of bounds");
    const WeightTable w = WeightTable::make(params_1step.ls, 1);

    // working copy truncated at tau0: later samples must not leak in
    TimeSeries work;
    work.offset = ts.offset;
    work.values.assign(ts.values.begin(), ts.values.begin() + tau0 + 1);

    Forecast result;
    result.horizon = static_cast<int>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        Forecast f = predict_core(work, work.size() - 1, params_1step, w);
        if (!f.value) {
            f.value = work.back();
            f.substituted = Substitution::naive_fallback;
            result.substituted = Substitution::naive_fallback;
        }
        work.values.push_back(*f.value);
        result.value = f.value;
    }
    return result;
}

double naive_forecast(const TimeSeries& ts, std::size_t tau0, int /*lpr*/) {
    return ts.at(tau0);
}

} // namespace pmbsi
