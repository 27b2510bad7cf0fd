#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pmbsi/invariant.hpp"
#include "pmbsi/series.hpp"

namespace pmbsi {

enum class Substitution { none, naive_fallback, last_valid_fallback };

/**
 * One forecast. An empty value means the closed form was undefined
 * (zero denominator, non-positive ratio under 1/Q, or non-finite result);
 * the range-level policy resolves those to finite values and records how.
 */
struct Forecast {
    int horizon = 1;
    std::optional<double> value;
    Substitution substituted = Substitution::none;
};

/// Closed-form forecast of p(tau0 + lpr) from the invariance of C.
/// Reads only samples at indices <= tau0. Throws on insufficient history;
/// returns an empty value for an undefined (but in-bounds) forecast.
Forecast predict_one(const TimeSeries& ts, std::size_t tau0, const StringParams& params);

struct RangeResult {
    std::vector<Forecast> forecasts;
    double substitution_rate = 0.0; // fraction of undefined raw forecasts
};

/// Forecasts for tau0 in [begin, end), in time order, with undefined values
/// substituted: horizon 1 by p(tau0), horizon > 1 by the most recent valid
/// forecast of this run (p(tau0) when none exists yet).
RangeResult predict_range(const TimeSeries& ts, const StringParams& params,
                          std::size_t begin, std::size_t end);

/// Applies a 1-step model `steps` times, appending each forecast to a working
/// copy of the series. The per-step fallback uses the appended history.
Forecast iterated_predict(const TimeSeries& ts, const StringParams& params_1step,
                          std::size_t tau0, std::size_t steps);

/// p(tau0), regardless of horizon.
double naive_forecast(const TimeSeries& ts, std::size_t tau0, int lpr);

} // namespace pmbsi
