#pragma once

#include <stdexcept>
#include <string>

namespace pmbsi {

// Unreadable/malformed input data. Maps to CLI exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure that is not a per-point undefined forecast (those are
// handled by the substitution policy). Maps to CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pmbsi
