#pragma once

#include "agents.hpp"
#include "encoding.hpp"

namespace dcsim {

struct Sample {
    long long step = 0;
    int populationSize = 0;
    double thicknessRange = 0.0;  // max y - min y over particles, px
    double meanY = 0.0;
};

struct Verdict {
    Candidate winner = Candidate::Clanton;
    double estimatedMajorityPct = 50.0;  // [50, 100]
    long long haltStep = 0;
};

// Population count, thickness range and mean particle y of the current world.
// Throws MeasurementError on an empty population (the run has collapsed).
Sample measure(const WorldState& world);

// Halting test: thickness at or below the threshold (inclusive).
bool shouldHalt(const Sample& s, double threshold);

// Winner from which side of the centre line the band settled on; majority size
// from the band's offset, 50 + 50*min(1, |meanY - centreY| / amplitude).
// meanY exactly on the centre line is surfaced as IndeterminateResultError.
Verdict readout(double meanY, const EncodingParams& p);

struct MajorityResult {
    Candidate winner = Candidate::Clanton;
    double majorityPct = 100.0;
};

// Ground truth by direct vote counting; n odd, so a tie cannot occur.
MajorityResult trueMajority(const Election& e);

// Default halt threshold: the measured thickness of a straight, settled band.
// At SO 5 a relaxed band's particle extent bottoms out around 12-13 px and
// averages 15-16 px (soft-edged core of ~10 px plus a persistent fringe), so
// the threshold is calibrated to 16 px at SO 5 and scaled with the sensor
// offset, which sets the band's natural width. A run halts when its thickness
// first dips to what a straight band exhibits.
inline double defaultHaltThickness(double sensorOffset) { return 3.2 * sensorOffset; }

}  // namespace dcsim
