#pragma once

#include <cstddef>
#include <vector>

#include "pmbsi/series.hpp"

namespace pmbsi {

/**
 * The model's free parameters. The string length ls must exceed the
 * prediction horizon lpr so that lambda = ls - lpr >= 1.
 */
struct StringParams {
    int ls = 2;
    int lpr = 1;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double q = 1.0;

    int lambda() const { return ls - lpr; }
    void validate() const;
};

/// Precomputed bimodal weight for one (ls, lpr) pair. W(h) takes the value
/// 1 - w0 for h <= ls/2 (real-valued comparison) and w0 otherwise, with
/// w0 = 1 / sum_{h'=0}^{ls} exp(-h'/lambda).
struct WeightTable {
    int ls = 0;
    int lpr = 0;
    double w0 = 0.0;
    double sum_w = 0.0; // sum of W(h) over h = 0..lambda

    static WeightTable make(int ls, int lpr);
    double at(int h) const { return 2 * h <= ls ? 1.0 - w0 : w0; }
};

double weight(int h, const StringParams& params);

/// The weighted mixed-string invariant C(tau, lambda): three weighted sums
/// over h = 0..lambda mixing 2-end-point, 1-end-point, and tail-trend terms
/// via the homotopy parameters.
double compute_C(const TimeSeries& ts, std::size_t tau, const StringParams& params);

/**
 * Auxiliary decomposition of C at the window anchored at tau':
 * C(tau') == a1 + a3 + a4 + (a2 + a5) / p(tau'+ls)^Q. The sums read only
 * p(tau'+h) for h = 0..lambda; the sample at tau'+ls is never accessed.
 * c_hist is C evaluated at the historical window tau' - lpr.
 */
struct AuxVariables {
    double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0;
    double c_hist = 0;
};

AuxVariables compute_aux(const TimeSeries& ts, std::size_t tau_prime,
                         const StringParams& params);

struct DriftStats {
    double mean = 0;
    double max = 0;
    std::size_t n = 0;
};

/// Residual of the efficiency condition |C(tau) - C(tau + lpr)| summarized
/// over tau in [begin, end).
DriftStats invariant_drift(const TimeSeries& ts, const StringParams& params,
                           std::size_t begin, std::size_t end);

} // namespace pmbsi
