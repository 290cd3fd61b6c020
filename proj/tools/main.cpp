// dcsim: density-classification experiments on two substrates -- a
// slime-mould-style multi-agent band that relaxes a square-wave vote pattern
// to a majority line, and a 1D averaging cellular automaton that mimics the
// same relaxation. All outputs are seeded, reproducible CSV (plus optional
// PGM frames).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "../src/errors.hpp"
#include "../src/harness.hpp"

namespace fs = std::filesystem;
using namespace dcsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRunFailed = 3;

std::optional<Election> loadVotes(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream f(path);
    if (!f) {
        throw std::invalid_argument("cannot read votes file " + path);
    }
    std::string line;
    std::getline(f, line);
    return parseElection(line);
}

std::string outPath(const ExperimentConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.outDir);
    return (fs::path(cfg.outDir) / name).string();
}

void addCommonFlags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "root RNG seed");
    cmd->add_option("--voters", cfg.voters, "number of voters (odd)");
    cmd->add_option("--runs", cfg.runs, "runs per batch / sweep point");
    cmd->add_option("--out", cfg.outDir, "output directory");
    cmd->add_option("--workers", cfg.workers, "concurrent runs in batch mode");
    cmd->add_option("--frames-every", cfg.framesEvery, "PGM frame interval (0 = none)");
    cmd->set_config("--config")->configurable(false);
}

void addAgentFlags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--so", cfg.agent.sensorOffset, "sensor offset distance, px");
    cmd->add_option("--sa", cfg.agent.sensorAngleDeg, "sensor angle, degrees");
    cmd->add_option("--ra", cfg.agent.rotationAngleDeg, "rotation angle, degrees");
    cmd->add_option("--decay", cfg.agent.decayRate, "trail decay per step");
    cmd->add_option("--arena-width", cfg.enc.arenaWidth, "arena width, px");
    cmd->add_option("--arena-height", cfg.enc.arenaHeight, "arena height, px");
    cmd->add_option("--amplitude", cfg.enc.amplitude, "vote band amplitude, px");
    cmd->add_option("--population", cfg.enc.populationSize, "seeded particle count");
    cmd->add_option("--seed-thickness", cfg.enc.seedThickness, "seeded band thickness, px");
    cmd->add_option("--halt-thickness", cfg.haltThickness,
                    "halt when band thickness <= this (0 = straight-band rule, 3.2*SO)");
    cmd->add_option("--hold-steps", cfg.holdSteps, "stimulus hold phase length");
    cmd->add_option("--sample-interval", cfg.sampleInterval, "steps between measurements");
    cmd->add_option("--max-steps", cfg.maxAgentSteps, "scheduler step cap");
    cmd->add_option("--votes-file", cfg.votesFile, "one-line C,T,... vote file");
    cmd->add_option("--render-gain", cfg.renderGain, "PGM intensity per concentration unit");
}

void addCaFlags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--radius", cfg.radius, "CA neighbourhood radius");
    cmd->add_option("--epsilon", cfg.haltEpsilon, "CA halting value-range threshold");
    cmd->add_option("--ca-max-steps", cfg.caMaxSteps, "CA step cap");
    cmd->add_option("--votes-file", cfg.votesFile, "one-line C,T,... vote file");
}

int cmdAgentRun(ExperimentConfig& cfg) {
    cfg.validate();
    std::string framePrefix;
    if (cfg.framesEvery > 0) framePrefix = outPath(cfg, "frame_");
    const RunRecord rec =
        runAgentExperiment(cfg, cfg.seed, loadVotes(cfg.votesFile), framePrefix);
    writeTextFile(outPath(cfg, "samples.csv"), sampleCsv(cfg, rec.samples));
    writeTextFile(outPath(cfg, "verdict.csv"), verdictCsv(cfg, {rec}));
    std::printf("election %s: true winner %s (%.2f%%)\n", formatElection(rec.election).c_str(),
                candidateName(rec.trueWinner), rec.trueMajorityPct);
    if (!rec.converged()) {
        std::printf("run failed: %s after %lld steps\n", runStatusName(rec.status), rec.haltStep);
        return kExitRunFailed;
    }
    std::printf("estimated winner %s (%.2f%%), halted at step %lld, %d particles left\n",
                candidateName(rec.verdict.winner), rec.verdict.estimatedMajorityPct,
                rec.haltStep, rec.finalPopulation);
    return kExitOk;
}

int cmdAgentBatch(ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<RunRecord> records = runAgentBatch(cfg, cfg.runs);
    const BatchSummary summary = summarizeBatch(records);
    writeTextFile(outPath(cfg, "runs.csv"), verdictCsv(cfg, records));
    writeTextFile(outPath(cfg, "summary.csv"), batchSummaryCsv(cfg, summary));
    std::printf("%d runs: %d correct winners, %d failed, mean |error| %.2f%%, "
                "mean halt step %.0f, pearson r %.4f\n",
                summary.runs, summary.correctWinners, summary.failedRuns,
                summary.meanAbsErrorPct, summary.meanHaltStep, summary.pearsonR);
    return summary.failedRuns == 0 ? kExitOk : kExitRunFailed;
}

int cmdCaRun(ExperimentConfig& cfg) {
    cfg.validate();
    const std::optional<Election> votes = loadVotes(cfg.votesFile);

    std::vector<std::uint8_t> spacetime;
    long long renderedRows = 0;
    if (cfg.framesEvery > 0) {
        Rng rng(cfg.seed);
        const Election e = votes ? *votes : randomElection(cfg.voters, rng);
        CaConfig ca{cfg.voters, cfg.radius, cfg.haltEpsilon, cfg.caMaxSteps};
        caRun(initCa(e), ca,
              [&](const CaState& s, long long) {
                  for (double v : s.cells) {
                      spacetime.push_back(static_cast<std::uint8_t>(std::lround(v * 2.55)));
                  }
                  ++renderedRows;
              },
              cfg.framesEvery);
    }

    const CaRunRow row = runCaExperiment(cfg.seed, cfg.voters, cfg.radius, cfg.haltEpsilon,
                                         cfg.caMaxSteps, votes);
    writeTextFile(outPath(cfg, "ca_run.csv"), caRunCsv(cfg, {row}));
    if (renderedRows > 0) {
        writePgm(outPath(cfg, "ca_spacetime.pgm"), cfg.voters,
                 static_cast<int>(renderedRows), spacetime);
    }
    std::printf("n=%d r=%d: %d up votes, final value %.4f, winner %s, halted at step %lld\n",
                row.n, row.r, row.upVotes, row.finalValue, candidateName(row.estWinner),
                row.haltSteps);
    return row.timedOut ? kExitRunFailed : kExitOk;
}

int cmdCaSweep(ExperimentConfig& cfg, bool sweepN) {
    cfg.validate();
    std::vector<CaRunRow> rows;
    const std::vector<CaSweepPoint> points =
        sweepN ? runCaSweepN(cfg, &rows) : runCaSweepR(cfg, &rows);
    const std::string base = sweepN ? "ca_sweep_n" : "ca_sweep_r";
    writeTextFile(outPath(cfg, base + ".csv"), caSweepCsv(cfg, points));
    writeTextFile(outPath(cfg, base + "_runs.csv"), caRunCsv(cfg, rows));
    bool anyTimeout = false;
    for (const CaSweepPoint& p : points) {
        std::printf("n=%d r=%d: %d/%d correct, mean halt %.1f steps\n", p.n, p.r, p.correct,
                    p.runs, p.meanHaltSteps);
    }
    for (const CaRunRow& r : rows) anyTimeout = anyTimeout || r.timedOut;
    return anyTimeout ? kExitRunFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"density classification via morphological adaptation"};
    app.require_subcommand(1);

    ExperimentConfig cfg;

    CLI::App* agentRun = app.add_subcommand("agent-run", "single multi-agent election run");
    CLI::App* agentBatch = app.add_subcommand("agent-batch", "batch of multi-agent elections");
    CLI::App* caRunCmd = app.add_subcommand("ca-run", "single averaging-CA run");
    CLI::App* caSweepN = app.add_subcommand("ca-sweep-n", "CA accuracy/halt-time sweep over n");
    CLI::App* caSweepR = app.add_subcommand("ca-sweep-r", "CA halt-time sweep over radius");

    for (CLI::App* cmd : {agentRun, agentBatch, caRunCmd, caSweepN, caSweepR}) {
        addCommonFlags(cmd, cfg);
    }
    addAgentFlags(agentRun, cfg);
    addAgentFlags(agentBatch, cfg);
    addCaFlags(caRunCmd, cfg);
    addCaFlags(caSweepN, cfg);
    addCaFlags(caSweepR, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (agentRun->parsed()) return cmdAgentRun(cfg);
        if (agentBatch->parsed()) return cmdAgentBatch(cfg);
        if (caRunCmd->parsed()) return cmdCaRun(cfg);
        if (caSweepN->parsed()) return cmdCaSweep(cfg, true);
        if (caSweepR->parsed()) return cmdCaSweep(cfg, false);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const EncodingError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const SeedingError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRunFailed;
    }
    return kExitConfigError;
}
