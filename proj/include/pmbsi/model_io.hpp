#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pmbsi/ga.hpp"
#include "pmbsi/invariant.hpp"

namespace pmbsi {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to reproduce forecasts: the five parameters, the
/// positivity offset of the series the model was fitted on, the GA bounds,
/// the seed, and the tool version. Plain key=value text.
struct ModelFile {
    StringParams params;
    ParamBounds bounds;
    double offset = 0.0;
    std::uint64_t seed = 0;
    std::string version = kToolVersion;
};

void save_model(const ModelFile& model, std::ostream& out);
ModelFile load_model(std::istream& in);

void save_model_file(const ModelFile& model, const std::string& path);
ModelFile load_model_file(const std::string& path);

} // namespace pmbsi
