#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "pmbsi/errors.hpp"

namespace pmbsi {

/**
 * Ordered real-valued samples with provenance metadata.
 *
 * `offset` records the positivity shift added to the raw data (0 if none);
 * `fill_mask[i]` is true where the sample was interpolated from missing input.
 * Values are never reordered.
 */
struct TimeSeries {
    std::vector<double> values;
    double offset = 0.0;
    std::vector<bool> fill_mask;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double at(std::size_t i) const;
    double back() const { return values.back(); }
};

/// Parses one value per line. Blank or non-numeric records mark missing
/// values, filled by linear interpolation (nearest-value extension at the
/// ends). A non-numeric, non-blank first line is treated as a header.
TimeSeries load_series(std::istream& in);

/// Writes one value per line; load_series(serialize(ts)) reproduces values.
void serialize(const TimeSeries& ts, std::ostream& out);

double default_shift_epsilon(const TimeSeries& ts);

/// Adds |min| + epsilon to every sample when min <= 0, recording the offset.
/// Idempotent on its own output.
TimeSeries shift_positive(const TimeSeries& ts, double epsilon);

/// Removes the stored positivity offset from a forecast value.
inline double unshift(double forecast, const TimeSeries& ts) {
    return forecast - ts.offset;
}

struct SplitSpec {
    double valid_fraction = 0.4;
    double train_weight = 6.0;
    double eval_weight = 4.0;
};

struct SplitBounds {
    std::size_t train_end = 0; // [0, train_end) is training
    std::size_t eval_end = 0;  // [train_end, eval_end) is evaluation,
                               // [eval_end, n) is validation
};

/// Chronological cut points; fractional boundaries are floored.
SplitBounds split_points(std::size_t n, const SplitSpec& spec);

/// Contiguous train/eval/valid segments, ordered in time, covering ts.
std::array<TimeSeries, 3> split_three(const TimeSeries& ts, const SplitSpec& spec);

} // namespace pmbsi
