#include "pmbsi/invariant.hpp"

#include <cmath>
#include <stdexcept>

#include "pmbsi/stringmap.hpp"

namespace pmbsi {

void StringParams::validate() const {
    if (ls <= lpr) throw NumericalError("string length must exceed horizon");
    if (lpr < 1) throw NumericalError("horizon must be >= 1");
    if (!(q > 0.0)) throw NumericalError("Q must be positive");
    if (!(eta1 > -1.0 && eta1 < 1.0 && eta2 > -1.0 && eta2 < 1.0))
        throw NumericalError("eta parameters must lie in (-1,1)");
}

WeightTable WeightTable::make(int ls, int lpr) {
    const int lambda = ls - lpr;
    if (lambda < 1) throw NumericalError("string length must exceed horizon");
    double denom = 0.0;
    for (int hp = 0; hp <= ls; ++hp)
        denom += std::exp(-static_cast<double>(hp) / lambda);
    WeightTable w;
    w.ls = ls;
    w.lpr = lpr;
    w.w0 = 1.0 / denom;
    for (int h = 0; h <= lambda; ++h) w.sum_w += w.at(h);
    return w;
}

double weight(int h, const StringParams& params) {
    return WeightTable::make(params.ls, params.lpr).at(h);
}

double compute_C(const TimeSeries& ts, std::size_t tau, const StringParams& params) {
    params.validate();
    const std::size_t ls = static_cast<std::size_t>(params.ls);
    if (tau + ls >= ts.size())
        throw std::out_of_range("invariant window out of bounds");
    const WeightTable w = WeightTable::make(params.ls, params.lpr);
    const double e1 = params.eta1, e2 = params.eta2, q = params.q;
    const double p_end = ts.at(tau + ls);
    const double p0 = ts.at(tau);
    double sum = 0.0;
    for (int h = 0; h <= params.lambda(); ++h) {
        const double ph = ts.at(tau + static_cast<std::size_t>(h));
        const double b1 = q_bracket(p0, ph, q);
        const double b2 = q_bracket(ph, p_end, q);
        sum += w.at(h) * ((1.0 - e1) * (1.0 - e2) * b1 * b2 + e1 * (1.0 - e2) * b1 + e2 * b2);
    }
    return sum;
}

AuxVariables compute_aux(const TimeSeries& ts, std::size_t tau_prime,
                         const StringParams& params) {
    params.validate();
    const int lambda = params.lambda();
    if (tau_prime < static_cast<std::size_t>(params.lpr))
        throw std::out_of_range("aux window out of bounds");
    if (tau_prime + static_cast<std::size_t>(lambda) >= ts.size())
        throw std::out_of_range("aux window out of bounds");
    const WeightTable w = WeightTable::make(params.ls, params.lpr);
    const double e1 = params.eta1, e2 = params.eta2, q = params.q;
    const double p0 = ts.at(tau_prime);

    AuxVariables aux;
    for (int h = 0; h <= lambda; ++h) {
        const double ph = ts.at(tau_prime + static_cast<std::size_t>(h));
        const double wh = w.at(h);
        const double b1 = q_bracket(p0, ph, q);
        const double ph_q = std::exp(q * std::log(ph));
        aux.a1 += (1.0 - e1) * (1.0 - e2) * wh * b1;
        aux.a2 -= (1.0 - e1) * (1.0 - e2) * wh * b1 * ph_q;
        aux.a3 += e1 * (1.0 - e2) * wh * b1;
        aux.a4 += e2 * wh;
        aux.a5 -= e2 * wh * ph_q;
    }
    aux.c_hist = compute_C(ts, tau_prime - static_cast<std::size_t>(params.lpr), params);
    return aux;
}

DriftStats invariant_drift(const TimeSeries& ts, const StringParams& params,
                           std::size_t begin, std::size_t end) {
    if (begin >= end) throw NumericalError("empty drift range");
    DriftStats stats;
    double sum = 0.0;
    for (std::size_t tau = begin; tau < end; ++tau) {
        const double a = compute_C(ts, tau, params);
        const double b = compute_C(ts, tau + static_cast<std::size_t>(params.lpr), params);
        const double d = std::abs(a - b);
        sum += d;
        if (d > stats.max) stats.max = d;
        ++stats.n;
    }
    stats.mean = sum / static_cast<double>(stats.n);
    return stats;
}

} // namespace pmbsi
