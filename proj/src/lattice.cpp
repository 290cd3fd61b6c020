#include "lattice.hpp"

#include <cstdio>
#include <stdexcept>

#include "errors.hpp"

namespace dcsim {

TrailField::TrailField(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("TrailField dimensions must be positive");
    }
    values_.assign(static_cast<std::size_t>(width) * height, 0.0);
    scratch_.assign(values_.size(), 0.0);
}

void TrailField::deposit(int x, int y, double amount) {
    if (!std::isfinite(amount) || amount < 0.0) {
        throw std::invalid_argument("deposit amount must be finite and non-negative");
    }
    at(wrapX(x, width_), clampY(y, height_)) += amount;
}

void TrailField::projectStimulus(const std::vector<Pixel>& pixels, double amount) {
    if (!std::isfinite(amount) || amount < 0.0) {
        throw std::invalid_argument("stimulus amount must be finite and non-negative");
    }
    for (const Pixel& px : pixels) {
        if (px.x < 0 || px.x >= width_ || px.y < 0 || px.y >= height_) {
            throw EncodingError("stimulus pixel out of bounds at (" + std::to_string(px.x) +
                                "," + std::to_string(px.y) + ")");
        }
    }
    for (const Pixel& px : pixels) {
        at(px.x, px.y) += amount;
    }
}

double TrailField::sample(double x, double y) const {
    int ix = wrapX(static_cast<int>(std::floor(x)), width_);
    int iy = clampY(static_cast<int>(std::floor(y)), height_);
    return at(ix, iy);
}

void TrailField::diffuseAndDecay(double decayRate) {
    if (!(decayRate >= 0.0 && decayRate < 1.0)) {
        throw std::invalid_argument("decayRate must be in [0, 1)");
    }
    const int w = width_;
    const int h = height_;

    // Horizontal 3-sum with wrap, per row.
    for (int y = 0; y < h; ++y) {
        const double* row = values_.data() + static_cast<std::size_t>(y) * w;
        double* out = scratch_.data() + static_cast<std::size_t>(y) * w;
        out[0] = row[w - 1] + row[0] + row[1 % w];
        for (int x = 1; x < w - 1; ++x) {
            out[x] = row[x - 1] + row[x] + row[x + 1];
        }
        if (w > 1) {
            out[w - 1] = row[w - 2] + row[w - 1] + row[0];
        }
    }

    // Vertical 3-sum with clamp-replicate, then scale.
    const double scale = (1.0 - decayRate) / 9.0;
    for (int y = 0; y < h; ++y) {
        const double* up = scratch_.data() + static_cast<std::size_t>(clampY(y - 1, h)) * w;
        const double* mid = scratch_.data() + static_cast<std::size_t>(y) * w;
        const double* down = scratch_.data() + static_cast<std::size_t>(clampY(y + 1, h)) * w;
        double* out = values_.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            out[x] = (up[x] + mid[x] + down[x]) * scale;
        }
    }
}

double TrailField::totalSum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

void writePgm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& bytes) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    std::fprintf(f, "P5 %d %d 255 ", width, height);
    std::fwrite(bytes.data(), 1, bytes.size(), f);
    std::fclose(f);
}

std::vector<std::uint8_t> renderField(const TrailField& field, double gain) {
    std::vector<std::uint8_t> out(field.values().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double v = field.values()[i] * gain;
        out[i] = static_cast<std::uint8_t>(v >= 255.0 ? 255 : std::lround(v));
    }
    return out;
}

}  // namespace dcsim
