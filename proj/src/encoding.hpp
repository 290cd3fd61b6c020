#pragma once

#include <string>
#include <vector>

#include "lattice.hpp"
#include "rng.hpp"

namespace dcsim {

// Up-candidate (smaller y) is Clanton, down-candidate is Tramp.
enum class Candidate { Clanton, Tramp };

inline const char* candidateName(Candidate c) {
    return c == Candidate::Clanton ? "Clanton" : "Tramp";
}
inline char candidateToken(Candidate c) { return c == Candidate::Clanton ? 'C' : 'T'; }

// Ordered vector of n (odd) binary votes; ground truth for every run.
struct Election {
    std::vector<Candidate> votes;

    int size() const { return static_cast<int>(votes.size()); }
    int upVotes() const;
};

struct EncodingParams {
    int arenaWidth = 600;
    int arenaHeight = 300;
    int amplitude = 50;        // vote offset from the centre line, px
    int populationSize = 3000;
    int seedThickness = 7;     // vertical extent of the seeded band, px

    int centreY() const { return arenaHeight / 2; }
    void validate(int voters) const;
};

// Rasterized square-wave band: 8-connected ordered pixel path, closed under
// horizontal wrap.
struct StimulusPolyline {
    std::vector<Pixel> pixels;
    int connectorCount = 0;  // vertical segments, equals cyclic vote sign changes
};

// Square wave through all voters: a horizontal segment of width w/n at
// centreY -/+ amplitude per voter, vertical connectors where consecutive votes
// differ, wrap connector between the last and first voter.
StimulusPolyline buildPolyline(const Election& e, const EncodingParams& p);

// The polyline dilated vertically by `thickness` rows (centred), deduplicated,
// in deterministic row-major order. This is the region particles seed into.
std::vector<Pixel> seedRegion(const StimulusPolyline& polyline, const EncodingParams& p);

struct Particle;  // agents.hpp

// `count` distinct cells chosen uniformly without replacement, one particle
// per cell with a random heading.
std::vector<Particle> seedPopulation(const std::vector<Pixel>& cells, int count, Rng& rng);

Election randomElection(int n, Rng& rng);

// One line of comma-separated C/T tokens, e.g. "C,C,T,C,T,T,C,C,C".
std::string formatElection(const Election& e);
Election parseElection(const std::string& line);

}  // namespace dcsim
