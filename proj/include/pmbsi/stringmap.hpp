#pragma once

#include <cmath>
#include <cstddef>

#include "pmbsi/series.hpp"

namespace pmbsi {

/// 1 - (num/den)^q. The ratio is formed first so that num == den gives an
/// exact 0, which keeps the string boundary conditions machine-exact.
inline double q_bracket(double num, double den, double q) {
    const double ratio = num / den;
    if (ratio == 1.0) return 0.0;
    return 1.0 - std::exp(q * std::log(ratio));
}

inline void check_positive(double v) {
    if (!(v > 0.0)) throw NumericalError("positivity violated");
}

/// 1-end-point string map: (p(tau+h) - p(tau)) / p(tau+h).
inline double p1_map(const TimeSeries& ts, std::size_t tau, std::size_t h) {
    const double a = ts.at(tau);
    const double b = ts.at(tau + h);
    return (b - a) / b;
}

/// Q-deformed 1-end-point map: 1 - [p(tau)/p(tau+h)]^Q.
inline double p1_q_map(const TimeSeries& ts, std::size_t tau, std::size_t h, double q) {
    const double a = ts.at(tau);
    const double b = ts.at(tau + h);
    check_positive(a);
    check_positive(b);
    return q_bracket(a, b, q);
}

/// 2-end-point map with Dirichlet boundaries: vanishes at h = 0 and h = ls.
inline double p2_q_map(const TimeSeries& ts, std::size_t tau, std::size_t h,
                       std::size_t ls, double q) {
    const double a = ts.at(tau);
    const double b = ts.at(tau + h);
    const double c = ts.at(tau + ls);
    check_positive(a);
    check_positive(b);
    check_positive(c);
    return q_bracket(a, b, q) * q_bracket(b, c, q);
}

} // namespace pmbsi
