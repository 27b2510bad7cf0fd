#include "pmbsi/metrics.hpp"

#include <cmath>

#include "pmbsi/errors.hpp"

namespace pmbsi {

namespace {
void check_lengths(std::span<const double> a, std::span<const double> f) {
    if (a.size() != f.size()) throw NumericalError("metric length mismatch");
    if (a.empty()) throw NumericalError("metric on empty input");
}
} // namespace

double mae(std::span<const double> actual, std::span<const double> forecast) {
    check_lengths(actual, forecast);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i)
        sum += std::abs(actual[i] - forecast[i]);
    return sum / static_cast<double>(actual.size());
}

double smape(std::span<const double> actual, std::span<const double> forecast,
             SmapeVariant variant) {
    check_lengths(actual, forecast);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double denom = std::abs(actual[i]) + std::abs(forecast[i]);
        if (denom == 0.0) continue; // defined limit: 0 contribution
        const double term = std::abs(actual[i] - forecast[i]) / denom;
        sum += variant == SmapeVariant::standard ? 2.0 * term : 0.5 * term;
    }
    return 100.0 * sum / static_cast<double>(actual.size());
}

} // namespace pmbsi
