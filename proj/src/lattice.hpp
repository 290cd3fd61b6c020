#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace dcsim {

// Horizontal axis wraps (voter 0 connects to voter n-1); vertical axis clamps.
inline int wrapX(int x, int width) {
    int m = x % width;
    return m < 0 ? m + width : m;
}

inline double wrapXf(double x, double width) {
    double m = std::fmod(x, width);
    return m < 0.0 ? m + width : m;
}

inline int clampY(int y, int height) {
    return y < 0 ? 0 : (y >= height ? height - 1 : y);
}

struct Pixel {
    int x = 0;
    int y = 0;
    bool operator==(const Pixel&) const = default;
};

// 2D non-negative chemoattractant concentration lattice. Dimensions are fixed
// at construction; values stay finite and >= 0 through every operation.
class TrailField {
public:
    TrailField(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    // Raw accessors, no wrapping. Callers pass in-bounds indices.
    double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    double& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<double>& values() const { return values_; }

    // Adds `amount` at the cell containing (x, y) after horizontal wrap and
    // vertical clamp. Rejects negative or non-finite amounts.
    void deposit(int x, int y, double amount);

    // Adds `amount` at every pixel. Pixels must already be in bounds; an
    // out-of-bounds pixel indicates a bad polyline build.
    void projectStimulus(const std::vector<Pixel>& pixels, double amount);

    // Value of the cell containing the continuous position (floor quantization,
    // horizontal wrap, vertical clamp).
    double sample(double x, double y) const;

    // Synchronous 3x3 mean (horizontal wrap, vertical clamp-replicate) followed
    // by multiplicative decay (1 - decayRate). 0 <= decayRate < 1.
    void diffuseAndDecay(double decayRate);

    double totalSum() const;

private:
    int width_;
    int height_;
    std::vector<double> values_;
    std::vector<double> scratch_;  // horizontal pass buffer
};

// P5 (binary) PGM, one byte per cell.
void writePgm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& bytes);

// Field rendered as intensity min(255, round(concentration * gain)).
std::vector<std::uint8_t> renderField(const TrailField& field, double gain);

}  // namespace dcsim
