// Acceptance suite: end-to-end checks of both substrates at full scale.
// Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "agents.hpp"
#include "harness.hpp"

using namespace dcsim;

namespace {

int failures = 0;

void report(int index, bool pass, const std::string& text) {
    std::printf("[%s] %d. %s\n", pass ? "PASS" : "FAIL", index, text.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
    char buf[1024];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criteria 1 and 4a: CA n-sweep -----------------------------------------

void checkCaSweepN(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<CaSweepPoint> points = runCaSweepN(cfg);

    int totalCorrect = 0, totalRuns = 0;
    for (const CaSweepPoint& p : points) {
        totalCorrect += p.correct;
        totalRuns += p.runs;
    }
    report(1, totalCorrect == totalRuns,
           fmt("CA decision correctness at r=1: %d/%d correct across %zu voter counts "
               "(%.1fs)",
               totalCorrect, totalRuns, points.size(), seconds(t0)));

    bool increasing = true;
    std::string halts;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && points[i].meanHaltSteps <= points[i - 1].meanHaltSteps) {
            increasing = false;
        }
        halts += fmt("%s n=%d:%.0f", i ? "," : "", points[i].n, points[i].meanHaltSteps);
    }
    report(4, increasing, "CA mean halt step strictly increasing in n at r=1:" + halts);
}

// ---- criterion 4b: CA r-sweep ----------------------------------------------

void checkCaSweepR(const ExperimentConfig& cfg) {
    const std::vector<CaSweepPoint> points = runCaSweepR(cfg);
    bool decreasing = true;
    std::string halts;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0 && points[i].meanHaltSteps >= points[i - 1].meanHaltSteps) {
            decreasing = false;
        }
        halts += fmt("%s r=%d:%.0f", i ? "," : "", points[i].r, points[i].meanHaltSteps);
    }
    report(4, decreasing,
           "CA mean halt step strictly decreasing in r at n=199:" + halts);
}

// ---- criterion 2: CA conservation ------------------------------------------

void checkCaConservation() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(424242);
    bool pass = true;
    double worstFinal = 0.0, worstDrift = 0.0;
    for (int trial = 0; trial < 1000 && pass; ++trial) {
        const int n = 9 + 2 * static_cast<int>(rng.nextBelow(196));  // odd, 9..399
        CaState s;
        for (int i = 0; i < n; ++i) s.cells.push_back(rng.nextBool() ? 100.0 : 0.0);
        const double initialMean = s.mean();

        double sum = 0.0;
        for (double v : s.cells) sum += v;
        long long step = 0;
        while (s.range() >= 0.01 && step < 10'000'000) {
            s = caStep(s, 1);
            ++step;
            double newSum = 0.0;
            for (double v : s.cells) newSum += v;
            const double drift = sum == 0.0 ? std::abs(newSum)
                                            : std::abs(newSum - sum) / sum;
            worstDrift = std::max(worstDrift, drift);
            if (drift > 1e-12) pass = false;
            sum = newSum;
        }
        const double err = std::abs(s.mean() - initialMean);
        worstFinal = std::max(worstFinal, err);
        if (err >= 0.01) pass = false;
    }
    report(2, pass,
           fmt("CA conservation over 1000 runs: max |final-mean0| %.2e (< 0.01), max "
               "per-step drift %.2e (<= 1e-12) (%.1fs)",
               worstFinal, worstDrift, seconds(t0)));
}

// ---- criterion 3: exhaustive n=9 oracle ------------------------------------

void checkCaExhaustive() {
    bool pass = true;
    for (int bits = 0; bits < 512 && pass; ++bits) {
        Election e;
        for (int i = 0; i < 9; ++i) {
            e.votes.push_back((bits >> i) & 1 ? Candidate::Clanton : Candidate::Tramp);
        }
        CaConfig cfg{9, 1, 0.01, 1'000'000};
        const CaRunResult r = caRun(initCa(e), cfg);
        if (r.timedOut || caReadout(r.finalValue).winner != trueMajority(e).winner) {
            pass = false;
        }
    }
    report(3, pass, "CA exhaustive oracle: all 512 nine-cell states match vote counting");
}

// ---- criteria 5 and 7: 9-voter agent batch ---------------------------------

std::vector<RunRecord> checkAgentBatch9(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<RunRecord> records = runAgentBatch(cfg, 30);
    const BatchSummary s = summarizeBatch(records);

    const bool pass = s.failedRuns == 0 && s.correctWinners >= 28 &&
                      s.meanAbsErrorPct <= 3.0 && s.pearsonR >= 0.95;
    report(5, pass,
           fmt("agent 9-voter accuracy: %d/30 correct (>= 28), %d failed, mean |err| "
               "%.2f%% (<= 3), max %.2f%%, pearson r %.4f (>= 0.95), mean halt %.0f "
               "(%.0fs)",
               s.correctWinners, s.failedRuns, s.meanAbsErrorPct, s.maxAbsErrorPct,
               s.pearsonR, s.meanHaltStep, seconds(t0)));

    // Fig-5-style time series shape, assessed on the first run of the batch.
    bool shape = true;
    std::string detail;
    const RunRecord& r0 = records[0];
    if (!r0.converged() || r0.samples.empty()) {
        shape = false;
        detail = "first run did not converge";
    } else {
        const int initialPop = r0.samples.front().populationSize;
        int peakPop = 0;
        for (const Sample& s0 : r0.samples) peakPop = std::max(peakPop, s0.populationSize);
        const int finalPop = r0.samples.back().populationSize;
        const double t0thick = r0.samples.front().thicknessRange;
        const double expected = 2.0 * cfg.enc.amplitude;

        shape = peakPop > initialPop &&
                finalPop <= static_cast<int>(0.8 * peakPop) &&
                r0.samples.back().thicknessRange <= cfg.effectiveHaltThickness() &&
                std::abs(t0thick - expected) <= cfg.enc.seedThickness + 2.0;
        detail = fmt("population %d -> peak %d -> final %d (final <= 0.8*peak), "
                     "thickness %.1f at step 0 (~%.0f), %.1f at halt (<= %.0f)",
                     initialPop, peakPop, finalPop, t0thick, expected,
                     r0.samples.back().thicknessRange, cfg.effectiveHaltThickness());
    }
    for (const RunRecord& r : records) {
        if (r.converged() && r.samples.back().thicknessRange > cfg.effectiveHaltThickness()) {
            shape = false;
            detail += " [halt thickness violated]";
        }
    }
    report(7, shape, "agent time-series shape: " + detail);
    return records;
}

// ---- criterion 6: 19-voter scaling -----------------------------------------

void checkAgentScaling19(const ExperimentConfig& base, double meanHalt9) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = base;
    cfg.voters = 19;
    cfg.seed = deriveSeed(base.seed, 1900);
    const std::vector<RunRecord> records = runAgentBatch(cfg, 10);
    const BatchSummary s = summarizeBatch(records);

    const bool pass = s.failedRuns == 0 && s.correctWinners >= 9 &&
                      s.meanHaltStep > meanHalt9 &&
                      meanHalt9 >= 0.3 * 58000.0 && meanHalt9 <= 3.0 * 58000.0 &&
                      s.meanHaltStep >= 0.3 * 175000.0 && s.meanHaltStep <= 3.0 * 175000.0;
    report(6, pass,
           fmt("agent 19-voter scaling: %d/10 correct (>= 9), %d failed, mean halt %.0f "
               "(> 9-voter %.0f; bands 17400..174000 and 52500..525000) (%.0fs)",
               s.correctWinners, s.failedRuns, s.meanHaltStep, meanHalt9, seconds(t0)));
}

// ---- criterion 8: engine invariants ----------------------------------------

bool worldInvariantsHold(WorldState& world) {
    if (world.occupancy.occupiedCount() != world.aliveCount) return false;
    int alive = 0;
    for (std::int32_t id = 0; id < static_cast<std::int32_t>(world.particles.size()); ++id) {
        const Particle& p = world.particles[id];
        if (!p.alive) continue;
        ++alive;
        if (world.occupancy.at(world.cellX(p), world.cellY(p)) != id) return false;
        if (p.headingDeg < 0.0 || p.headingDeg >= 360.0) return false;
    }
    if (alive != world.aliveCount) return false;
    for (double v : world.field.values()) {
        if (!(v >= 0.0)) return false;
    }
    return true;
}

void checkEngineInvariants(const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;

    // one-per-cell, non-negativity, deposit accounting on a default-size world
    WorldState world(cfg.enc.arenaWidth, cfg.enc.arenaHeight, 31337);
    Election e = randomElection(cfg.voters, world.rng);
    const StimulusPolyline poly = buildPolyline(e, cfg.enc);
    for (const Particle& p :
         seedPopulation(seedRegion(poly, cfg.enc), cfg.enc.populationSize, world.rng)) {
        world.addParticle(p);
    }
    runHoldPhase(world, poly.pixels, cfg.holdSteps, cfg.agent, cfg.stimulusAmount);
    for (int step = 0; step < 300 && pass; ++step) {
        const double before = world.field.totalSum();
        const StepStats stats = agentPass(world, cfg.agent);
        const double delta = world.field.totalSum() - before;
        if (std::abs(delta - cfg.agent.depositAmount * stats.successfulMoves) > 1e-9) {
            pass = false;
            detail = "deposit accounting broke";
        }
        if (world.step % cfg.agent.adaptFrequency == 0) adaptationPass(world, cfg.agent);
        world.field.diffuseAndDecay(cfg.agent.decayRate);
        world.step += 1;
        if (pass && !worldInvariantsHold(world)) {
            pass = false;
            detail = fmt("world invariants broke at step %lld", world.step);
        }
    }

    // byte-level determinism of the sample CSV
    if (pass) {
        ExperimentConfig small = cfg;
        small.voters = 3;
        small.enc.arenaWidth = 150;
        small.enc.arenaHeight = 80;
        small.enc.amplitude = 15;
        small.enc.populationSize = 300;
        small.maxAgentSteps = 600;
        small.sampleInterval = 25;
        const RunRecord a = runAgentExperiment(small, 2024);
        const RunRecord b = runAgentExperiment(small, 2024);
        if (sampleCsv(small, a.samples) != sampleCsv(small, b.samples)) {
            pass = false;
            detail = "identical seed+config produced different CSV bytes";
        }
    }
    report(8, pass,
           pass ? fmt("engine invariants: one-per-cell, non-negativity, deposit "
                      "accounting, CSV determinism (%.0fs)",
                      seconds(t0))
                : "engine invariants: " + detail);
}

// ---- criterion 9: readout unit suite ---------------------------------------

void checkReadoutSuite() {
    EncodingParams enc;
    bool pass = true;

    for (double d : {1.0, 10.0, 25.0, 50.0}) {
        const Verdict up = readout(enc.centreY() - d, enc);
        const Verdict down = readout(enc.centreY() + d, enc);
        if (up.winner != Candidate::Clanton || down.winner != Candidate::Tramp ||
            up.estimatedMajorityPct != down.estimatedMajorityPct) {
            pass = false;
        }
    }
    if (readout(enc.centreY() - 2.0 * enc.amplitude, enc).estimatedMajorityPct != 100.0) {
        pass = false;
    }

    auto nineVoters = [](int up) {
        Election e;
        for (int i = 0; i < 9; ++i) {
            e.votes.push_back(i < up ? Candidate::Clanton : Candidate::Tramp);
        }
        return trueMajority(e);
    };
    if (std::abs(nineVoters(8).majorityPct - 88.89) > 0.005) pass = false;
    if (std::abs(nineVoters(6).majorityPct - 66.67) > 0.005) pass = false;
    if (std::abs(nineVoters(5).majorityPct - 55.56) > 0.005) pass = false;
    if (nineVoters(2).winner != Candidate::Tramp ||
        std::abs(nineVoters(2).majorityPct - 77.78) > 0.005) {
        pass = false;
    }
    report(9, pass,
           "readout suite: mirror symmetry, saturation at 100%, vote-table percentages");
}

}  // namespace

int main() {
    ExperimentConfig cfg;  // all defaults: SO 5, SA 90, RA 45, 3000 particles, hold 20
    cfg.seed = 1;
    cfg.runs = 100;

    checkCaExhaustive();
    checkCaConservation();
    checkReadoutSuite();
    checkEngineInvariants(cfg);
    checkCaSweepN(cfg);
    checkCaSweepR(cfg);

    const std::vector<RunRecord> batch9 = checkAgentBatch9(cfg);
    const BatchSummary s9 = summarizeBatch(batch9);
    checkAgentScaling19(cfg, s9.meanHaltStep);

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
