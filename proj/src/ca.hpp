#pragma once

#include <functional>
#include <vector>

#include "analysis.hpp"
#include "encoding.hpp"

namespace dcsim {

struct CaConfig {
    int cellCount = 9;             // n, odd
    int radius = 1;                // r >= 1, 2r+1 <= n
    double haltEpsilon = 0.01;     // halt when max - min < haltEpsilon (strict)
    long long maxSteps = 10'000'000;

    void validate() const;
};

// 1D averaging automaton state; values live in [0, 100].
struct CaState {
    std::vector<double> cells;

    double mean() const;
    double range() const;  // max - min
};

// Vote vector to cell values: up -> 100, down -> 0, in election order.
CaState initCa(const Election& e);

// Synchronous update: each cell becomes the mean of the 2r+1 cells centred on
// it under periodic wrap, computed entirely from the pre-step state.
CaState caStep(const CaState& s, int radius);

struct CaRunResult {
    double finalValue = 0.0;  // mean of cells at halt
    long long haltSteps = 0;
    bool timedOut = false;
    double lastRange = 0.0;   // diagnostic when timed out
};

// Iterates caStep until the value range drops below haltEpsilon or maxSteps is
// exhausted. The observer, when set, is called on the initial state and after
// every observeEvery-th step.
CaRunResult caRun(const CaState& s0, const CaConfig& cfg,
                  const std::function<void(const CaState&, long long)>& observer = {},
                  long long observeEvery = 1);

// Winner from which side of 50 the field stabilised on; majority size is the
// distance-derived share max(v, 100 - v).
MajorityResult caReadout(double finalValue);

}  // namespace dcsim
