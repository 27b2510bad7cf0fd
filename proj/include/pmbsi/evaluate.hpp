#pragma once

#include <cstddef>
#include <vector>

#include "pmbsi/predictor.hpp"
#include "pmbsi/series.hpp"

namespace pmbsi {

/// Paired actual/forecast vectors for one target segment, in the shifted
/// (strictly positive) scale of the input series. MAE is shift-invariant;
/// unshift both vectors before computing SMAPE on the original scale.
struct SegmentEval {
    std::vector<double> actual;
    std::vector<double> forecast;
    std::vector<Substitution> substituted;
    double substitution_rate = 0.0;
};

/// Direct forecasts of targets t in [t_begin, t_end): each uses the model at
/// tau0 = t - lpr with the series history before and at tau0.
SegmentEval forecast_targets_direct(const TimeSeries& ts, const StringParams& params,
                                    std::size_t t_begin, std::size_t t_end);

/// Iterated forecasts: each target t is reached by applying a 1-step model
/// `steps` times starting from tau0 = t - steps.
SegmentEval forecast_targets_iterated(const TimeSeries& ts, const StringParams& params_1step,
                                      std::size_t steps, std::size_t t_begin,
                                      std::size_t t_end);

/// Naive persistence forecasts of the same targets.
SegmentEval forecast_targets_naive(const TimeSeries& ts, int lpr,
                                   std::size_t t_begin, std::size_t t_end);

std::vector<double> unshift_all(const std::vector<double>& v, const TimeSeries& ts);

} // namespace pmbsi
