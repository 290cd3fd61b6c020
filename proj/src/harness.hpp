#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "ca.hpp"
#include "encoding.hpp"

namespace dcsim {

struct ExperimentConfig {
    std::uint64_t seed = 1;
    int voters = 9;
    AgentParams agent;
    EncodingParams enc;
    double stimulusAmount = 2.55;  // per polyline pixel, per hold step
    int holdSteps = 20;
    int sampleInterval = 50;
    // 0 = use the straight-band rule (3.2*SO; 16 px at the default SO 5)
    double haltThickness = 0.0;
    long long maxAgentSteps = 500'000;
    int radius = 1;
    double haltEpsilon = 0.01;
    long long caMaxSteps = 10'000'000;
    int runs = 30;
    int framesEvery = 0;
    double renderGain = 10.0;
    std::string outDir = ".";
    std::string votesFile;
    int workers = 1;

    double effectiveHaltThickness() const {
        return haltThickness > 0.0 ? haltThickness
                                   : defaultHaltThickness(agent.sensorOffset);
    }
    void validate() const;
};

// Flat key=value echo of every parameter; prefixed as a comment line in every
// CSV so outputs are self-describing and byte-reproducible.
std::string configEcho(const ExperimentConfig& cfg);

enum class RunStatus { Converged, TimedOut, Collapsed };

const char* runStatusName(RunStatus s);

struct RunRecord {
    std::uint64_t seed = 0;
    Election election;
    Candidate trueWinner = Candidate::Clanton;
    double trueMajorityPct = 0.0;
    RunStatus status = RunStatus::Converged;
    Verdict verdict;  // meaningful only when status == Converged
    long long haltStep = 0;
    int finalPopulation = 0;
    std::vector<Sample> samples;

    bool converged() const { return status == RunStatus::Converged; }
    double absErrorPct() const { return std::abs(verdict.estimatedMajorityPct - trueMajorityPct); }
};

struct BatchSummary {
    int runs = 0;
    int correctWinners = 0;
    int failedRuns = 0;
    int duplicateElections = 0;
    double meanAbsErrorPct = 0.0;
    double maxAbsErrorPct = 0.0;
    double stdAbsErrorPct = 0.0;
    double meanHaltStep = 0.0;
    double pearsonR = 0.0;
};

// One seeded encode -> hold -> relax -> readout experiment. Samples are taken
// at step 0 and every sampleInterval steps; halting is evaluated per sample
// once the hold phase is over. framePrefix, when non-empty, enables PGM frame
// dumps at every framesEvery steps plus the final step.
RunRecord runAgentExperiment(const ExperimentConfig& cfg, std::uint64_t runSeed,
                             const std::optional<Election>& election = std::nullopt,
                             const std::string& framePrefix = "");

// `numElections` independently seeded runs with random elections; per-run
// streams derive from cfg.seed. Failed runs are counted but excluded from the
// accuracy statistics.
std::vector<RunRecord> runAgentBatch(const ExperimentConfig& cfg, int numElections);

BatchSummary summarizeBatch(const std::vector<RunRecord>& records);

double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct CaRunRow {
    std::uint64_t seed = 0;
    int n = 0;
    int r = 1;
    int upVotes = 0;
    double trueMajorityPct = 0.0;
    double finalValue = 0.0;
    Candidate estWinner = Candidate::Clanton;
    bool correct = false;
    long long haltSteps = 0;
    bool timedOut = false;
};

CaRunRow runCaExperiment(std::uint64_t seed, int n, int radius, double haltEpsilon,
                         long long maxSteps, const std::optional<Election>& election = std::nullopt);

struct CaSweepPoint {
    int n = 0;
    int r = 1;
    int runs = 0;
    int correct = 0;
    double meanHaltSteps = 0.0;
};

// Voter counts assessed in the n-sweep (r = 1, `runs` elections per point).
extern const std::vector<int> kSweepVoterCounts;
// Radii assessed in the r-sweep at n = 199.
extern const std::vector<int> kSweepRadii;

std::vector<CaSweepPoint> runCaSweepN(const ExperimentConfig& cfg,
                                      std::vector<CaRunRow>* rows = nullptr);
std::vector<CaSweepPoint> runCaSweepR(const ExperimentConfig& cfg,
                                      std::vector<CaRunRow>* rows = nullptr);

// CSV emission. Every file starts with a config-echo comment followed by a
// header row.
std::string sampleCsv(const ExperimentConfig& cfg, const std::vector<Sample>& samples);
std::string verdictCsv(const ExperimentConfig& cfg, const std::vector<RunRecord>& records);
std::string batchSummaryCsv(const ExperimentConfig& cfg, const BatchSummary& s);
std::string caRunCsv(const ExperimentConfig& cfg, const std::vector<CaRunRow>& rows);
std::string caSweepCsv(const ExperimentConfig& cfg, const std::vector<CaSweepPoint>& points);

void writeTextFile(const std::string& path, const std::string& contents);

// Trail field as background intensity with particle cells drawn at 255.
void writeWorldFrame(const std::string& path, const WorldState& world, double renderGain);

}  // namespace dcsim
