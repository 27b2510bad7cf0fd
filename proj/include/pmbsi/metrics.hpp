#pragma once

#include <cstddef>
#include <span>

namespace pmbsi {

enum class SmapeVariant { standard, literal };

struct ErrorSummary {
    double mae = 0;
    double smape = 0;
    std::size_t n = 0;
};

/// Mean absolute error. Lengths must match and be non-empty.
double mae(std::span<const double> actual, std::span<const double> forecast);

/// Symmetric mean absolute percentage error.
/// standard: (100/n) sum |A-F| / ((|A|+|F|)/2), range [0, 200];
/// literal:  (100/n) sum 0.5 |A-F| / (|A|+|F|), range [0, 50].
/// Points with |A|+|F| == 0 contribute 0.
double smape(std::span<const double> actual, std::span<const double> forecast,
             SmapeVariant variant = SmapeVariant::standard);

} // namespace pmbsi
