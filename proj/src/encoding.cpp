#include "encoding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "agents.hpp"
#include "errors.hpp"

namespace dcsim {

int Election::upVotes() const {
    return static_cast<int>(std::count(votes.begin(), votes.end(), Candidate::Clanton));
}

void EncodingParams::validate(int voters) const {
    if (arenaWidth <= 0 || arenaHeight <= 0) {
        throw std::invalid_argument("arena dimensions must be positive");
    }
    if (voters > arenaWidth) {
        throw std::invalid_argument("more voters than arena columns");
    }
    if (amplitude <= 0 || amplitude >= arenaHeight / 2) {
        throw std::invalid_argument("amplitude must be in (0, arenaHeight/2)");
    }
    if (populationSize < 0) {
        throw std::invalid_argument("populationSize must be non-negative");
    }
    if (seedThickness < 1) {
        throw std::invalid_argument("seedThickness must be >= 1");
    }
}

StimulusPolyline buildPolyline(const Election& e, const EncodingParams& p) {
    const int n = e.size();
    if (n <= 0 || n % 2 == 0) {
        throw EncodingError("voter count must be odd and positive, got " + std::to_string(n));
    }
    p.validate(n);

    const int w = p.arenaWidth;
    const double spacing = static_cast<double>(w) / n;
    const int cy = p.centreY();
    auto voterY = [&](int i) {
        return e.votes[i] == Candidate::Clanton ? cy - p.amplitude : cy + p.amplitude;
    };

    StimulusPolyline out;
    out.pixels.reserve(static_cast<std::size_t>(w) + static_cast<std::size_t>(n) * 2 * p.amplitude);

    for (int i = 0; i < n; ++i) {
        const int x0 = static_cast<int>(std::lround(i * spacing));
        const int x1 = (i == n - 1) ? w : static_cast<int>(std::lround((i + 1) * spacing));
        const int y = voterY(i);

        // Vertical connector at this voter's first column when the previous
        // voter chose the other candidate (voter -1 wraps to voter n-1).
        const int prevY = voterY((i + n - 1) % n);
        if (prevY != y) {
            out.connectorCount += 1;
            const int dir = y > prevY ? 1 : -1;
            for (int yy = prevY; yy != y; yy += dir) {
                out.pixels.push_back({wrapX(x0, w), yy});
            }
        }
        for (int x = x0; x < x1; ++x) {
            out.pixels.push_back({x, y});
        }
    }
    return out;
}

std::vector<Pixel> seedRegion(const StimulusPolyline& polyline, const EncodingParams& p) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(p.arenaWidth) * p.arenaHeight, 0);
    const int lo = -(p.seedThickness - 1) / 2;
    const int hi = p.seedThickness / 2;
    for (const Pixel& px : polyline.pixels) {
        for (int dy = lo; dy <= hi; ++dy) {
            int y = clampY(px.y + dy, p.arenaHeight);
            mask[static_cast<std::size_t>(y) * p.arenaWidth + px.x] = 1;
        }
    }
    std::vector<Pixel> cells;
    for (int y = 0; y < p.arenaHeight; ++y) {
        for (int x = 0; x < p.arenaWidth; ++x) {
            if (mask[static_cast<std::size_t>(y) * p.arenaWidth + x]) {
                cells.push_back({x, y});
            }
        }
    }
    return cells;
}

std::vector<Particle> seedPopulation(const std::vector<Pixel>& cells, int count, Rng& rng) {
    if (count < 0) {
        throw std::invalid_argument("seed count must be non-negative");
    }
    if (count > static_cast<int>(cells.size())) {
        throw SeedingError("cannot seed " + std::to_string(count) + " particles on a band of " +
                           std::to_string(cells.size()) + " pixels");
    }
    // Partial Fisher-Yates: the first `count` entries are a uniform sample
    // without replacement.
    std::vector<Pixel> pool = cells;
    std::vector<Particle> particles;
    particles.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.nextBelow(pool.size() - i));
        std::swap(pool[i], pool[j]);
        Particle part;
        part.x = pool[i].x + 0.5;
        part.y = pool[i].y + 0.5;
        part.headingDeg = rng.nextAngleDeg();
        part.alive = true;
        part.movedLastStep = false;
        particles.push_back(part);
    }
    return particles;
}

Election randomElection(int n, Rng& rng) {
    if (n <= 0 || n % 2 == 0) {
        throw std::invalid_argument("voter count must be odd and positive");
    }
    Election e;
    e.votes.reserve(n);
    for (int i = 0; i < n; ++i) {
        e.votes.push_back(rng.nextBool() ? Candidate::Clanton : Candidate::Tramp);
    }
    return e;
}

std::string formatElection(const Election& e) {
    std::string out;
    for (int i = 0; i < e.size(); ++i) {
        if (i) out += ',';
        out += candidateToken(e.votes[i]);
    }
    return out;
}

Election parseElection(const std::string& line) {
    Election e;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        // trim whitespace
        tok.erase(0, tok.find_first_not_of(" \t\r\n"));
        tok.erase(tok.find_last_not_of(" \t\r\n") + 1);
        if (tok == "C") {
            e.votes.push_back(Candidate::Clanton);
        } else if (tok == "T") {
            e.votes.push_back(Candidate::Tramp);
        } else if (!tok.empty()) {
            throw EncodingError("bad vote token '" + tok + "'");
        }
    }
    if (e.votes.empty() || e.size() % 2 == 0) {
        throw EncodingError("vote file must contain an odd number of C/T votes");
    }
    return e;
}

}  // namespace dcsim
