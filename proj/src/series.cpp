#include "pmbsi/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace pmbsi {

double TimeSeries::at(std::size_t i) const {
    if (i >= values.size()) throw std::out_of_range("series index out of bounds");
    return values[i];
}

namespace {

bool parse_value(const std::string& line, double& out) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) return false;
    std::size_t e = line.find_last_not_of(" \t\r") + 1;
    const char* first = line.data() + b;
    const char* last = line.data() + e;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

} // namespace

TimeSeries load_series(std::istream& in) {
    std::vector<double> raw;
    std::vector<bool> missing;
    std::string line;
    bool first = true;
    bool any_line = false;
    while (std::getline(in, line)) {
        any_line = true;
        double v;
        const bool ok = parse_value(line, v);
        if (first) {
            first = false;
            if (!ok && !is_blank(line)) continue; // header
        }
        raw.push_back(ok ? v : 0.0);
        missing.push_back(!ok);
    }
    if (!any_line || raw.empty()) throw DataError("empty series");

    std::size_t valid = 0;
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (!missing[i]) ++valid;
    // interpolation needs at least two anchors and three resulting samples
    if (raw.size() < 3 || valid < 2) throw DataError("series too short");

    // linear interpolation between nearest valid neighbors; nearest-value
    // extension at the ends
    TimeSeries ts;
    ts.values = raw;
    ts.fill_mask = missing;
    std::size_t i = 0;
    const std::size_t n = raw.size();
    while (i < n) {
        if (!missing[i]) { ++i; continue; }
        std::size_t gap_begin = i;
        while (i < n && missing[i]) ++i;
        const std::size_t gap_end = i; // [gap_begin, gap_end) missing
        const bool has_left = gap_begin > 0;
        const bool has_right = gap_end < n;
        if (has_left && has_right) {
            const double l = ts.values[gap_begin - 1];
            const double r = ts.values[gap_end];
            const double span = static_cast<double>(gap_end - (gap_begin - 1));
            for (std::size_t j = gap_begin; j < gap_end; ++j) {
                const double t = static_cast<double>(j - (gap_begin - 1)) / span;
                ts.values[j] = l + t * (r - l);
            }
        } else {
            const double v = has_left ? ts.values[gap_begin - 1] : ts.values[gap_end];
            for (std::size_t j = gap_begin; j < gap_end; ++j) ts.values[j] = v;
        }
    }
    return ts;
}

void serialize(const TimeSeries& ts, std::ostream& out) {
    char buf[64];
    for (double v : ts.values) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        out.write(buf, ptr - buf);
        out.put('\n');
    }
}

double default_shift_epsilon(const TimeSeries& ts) {
    const auto [mn, mx] = std::minmax_element(ts.values.begin(), ts.values.end());
    return std::max(0.1 * (*mx - *mn), 1e-6);
}

TimeSeries shift_positive(const TimeSeries& ts, double epsilon) {
    if (!(epsilon > 0.0)) throw NumericalError("shift epsilon must be positive");
    if (ts.values.empty()) throw DataError("empty series");
    const double mn = *std::min_element(ts.values.begin(), ts.values.end());
    if (mn > 0.0) return ts; // already positive; keep any stored offset
    const double delta = std::abs(mn) + epsilon;
    TimeSeries out = ts;
    out.offset = ts.offset + delta;
    for (double& v : out.values) v += delta;
    return out;
}

SplitBounds split_points(std::size_t n, const SplitSpec& spec) {
    if (!(spec.valid_fraction > 0.0 && spec.valid_fraction < 1.0))
        throw DataError("valid_fraction must be in (0,1)");
    if (!(spec.train_weight > 0.0 && spec.eval_weight > 0.0))
        throw DataError("train/eval ratio must be positive");
    const auto head = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * (1.0 - spec.valid_fraction)));
    const auto train_end = static_cast<std::size_t>(std::floor(
        static_cast<double>(head) * spec.train_weight / (spec.train_weight + spec.eval_weight)));
    if (train_end == 0 || train_end == head || head == n)
        throw DataError("degenerate split");
    return SplitBounds{train_end, head};
}

std::array<TimeSeries, 3> split_three(const TimeSeries& ts, const SplitSpec& spec) {
    const SplitBounds b = split_points(ts.size(), spec);
    auto slice = [&](std::size_t lo, std::size_t hi) {
        TimeSeries s;
        s.offset = ts.offset;
        s.values.assign(ts.values.begin() + lo, ts.values.begin() + hi);
        if (!ts.fill_mask.empty())
            s.fill_mask.assign(ts.fill_mask.begin() + lo, ts.fill_mask.begin() + hi);
        return s;
    };
    return {slice(0, b.train_end), slice(b.train_end, b.eval_end),
            slice(b.eval_end, ts.size())};
}

} // namespace pmbsi
