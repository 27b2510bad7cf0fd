// Independent term-by-term evaluation of the string maps, the invariant, and
// the closed-form forecast. Deliberately written against the formulas with
// std::pow and plain loops, sharing no code with the library implementation.
#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace oracle {

inline double w0_of(int ls, int lpr) {
    const double lambda = ls - lpr;
    double denom = 0.0;
    for (int hp = 0; hp <= ls; ++hp) denom += std::exp(-hp / lambda);
    return 1.0 / denom;
}

inline double weight(int h, int ls, int lpr) {
    const double w0 = w0_of(ls, lpr);
    return h <= ls / 2.0 ? 1.0 - w0 : w0;
}

inline double invariant_C(const std::vector<double>& p, int tau, int ls, int lpr,
                          double e1, double e2, double q) {
    const int lambda = ls - lpr;
    double sum = 0.0;
    for (int h = 0; h <= lambda; ++h) {
        const double b1 = 1.0 - std::pow(p[tau] / p[tau + h], q);
        const double b2 = 1.0 - std::pow(p[tau + h] / p[tau + ls], q);
        sum += weight(h, ls, lpr) *
               ((1.0 - e1) * (1.0 - e2) * b1 * b2 + e1 * (1.0 - e2) * b1 + e2 * b2);
    }
    return sum;
}

struct Aux {
    double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0;
};

inline Aux aux_at(const std::vector<double>& p, int tau_prime, int ls, int lpr,
                  double e1, double e2, double q) {
    const int lambda = ls - lpr;
    Aux a;
    for (int h = 0; h <= lambda; ++h) {
        const double w = weight(h, ls, lpr);
        const double b1 = 1.0 - std::pow(p[tau_prime] / p[tau_prime + h], q);
        const double phq = std::pow(p[tau_prime + h], q);
        a.a1 += (1.0 - e1) * (1.0 - e2) * w * b1;
        a.a2 += -(1.0 - e1) * (1.0 - e2) * w * b1 * phq;
        a.a3 += e1 * (1.0 - e2) * w * b1;
        a.a4 += e2 * w;
        a.a5 += -e2 * w * phq;
    }
    return a;
}

inline std::optional<double> predict(const std::vector<double>& p, int tau0, int ls,
                                     int lpr, double e1, double e2, double q) {
    const int lambda = ls - lpr;
    const int tau_prime = tau0 - lambda;
    if (tau0 - ls < 0) return std::nullopt;
    const Aux a = aux_at(p, tau_prime, ls, lpr, e1, e2, q);
    const double c_hist = invariant_C(p, tau0 - ls, ls, lpr, e1, e2, q);
    const double denom = c_hist - a.a1 - a.a3 - a.a4;
    if (std::abs(denom) < 1e-12) return std::nullopt;
    const double ratio = (a.a2 + a.a5) / denom;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) return std::nullopt;
    const double x = std::pow(ratio, 1.0 / q);
    if (!std::isfinite(x)) return std::nullopt;
    return x;
}

} // namespace oracle
