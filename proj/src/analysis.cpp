#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace dcsim {

Sample measure(const WorldState& world) {
    Sample s;
    s.step = world.step;
    double minY = 0.0, maxY = 0.0, sumY = 0.0;
    int count = 0;
    for (const Particle& p : world.particles) {
        if (!p.alive) continue;
        if (count == 0) {
            minY = maxY = p.y;
        } else {
            minY = std::min(minY, p.y);
            maxY = std::max(maxY, p.y);
        }
        sumY += p.y;
        ++count;
    }
    if (count == 0) {
        throw MeasurementError("population collapsed to zero at step " +
                               std::to_string(world.step));
    }
    s.populationSize = count;
    s.thicknessRange = maxY - minY;
    s.meanY = sumY / count;
    return s;
}

bool shouldHalt(const Sample& s, double threshold) {
    if (threshold <= 0.0) {
        throw std::invalid_argument("halt threshold must be positive");
    }
    return s.thicknessRange <= threshold;
}

Verdict readout(double meanY, const EncodingParams& p) {
    if (!std::isfinite(meanY)) {
        throw std::invalid_argument("meanY must be finite");
    }
    const double offset = meanY - p.centreY();
    if (offset == 0.0) {
        throw IndeterminateResultError("band settled exactly on the centre line");
    }
    Verdict v;
    v.winner = offset < 0.0 ? Candidate::Clanton : Candidate::Tramp;
    v.estimatedMajorityPct =
        50.0 + 50.0 * std::min(1.0, std::abs(offset) / p.amplitude);
    return v;
}

MajorityResult trueMajority(const Election& e) {
    const int n = e.size();
    if (n % 2 == 0 || n == 0) {
        throw std::invalid_argument("election size must be odd");
    }
    const int up = e.upVotes();
    MajorityResult r;
    r.winner = up * 2 > n ? Candidate::Clanton : Candidate::Tramp;
    r.majorityPct = 100.0 * std::max(up, n - up) / n;
    return r;
}

}  // namespace dcsim
