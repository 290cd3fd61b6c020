#pragma once

#include <stdexcept>
#include <string>

namespace dcsim {

// Invalid stimulus geometry (even voter count, out-of-bounds polyline pixel).
struct EncodingError : std::runtime_error {
    explicit EncodingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Population cannot be placed (more particles requested than band pixels).
struct SeedingError : std::runtime_error {
    explicit SeedingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Measurement requested on an empty (collapsed) population.
struct MeasurementError : std::runtime_error {
    explicit MeasurementError(const std::string& msg) : std::runtime_error(msg) {}
};

// Readout landed exactly on the centre line / 50% mark.
struct IndeterminateResultError : std::runtime_error {
    explicit IndeterminateResultError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dcsim
