#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>

#include "errors.hpp"

namespace dcsim {

void ExperimentConfig::validate() const {
    agent.validate();
    enc.validate(voters);
    if (voters <= 0 || voters % 2 == 0) {
        throw std::invalid_argument("voters must be odd and positive");
    }
    if (sampleInterval < 1) throw std::invalid_argument("sampleInterval must be >= 1");
    if (holdSteps < 0) throw std::invalid_argument("holdSteps must be >= 0");
    if (stimulusAmount < 0.0) throw std::invalid_argument("stimulusAmount must be >= 0");
    if (haltThickness < 0.0) throw std::invalid_argument("haltThickness must be >= 0");
    if (maxAgentSteps < 1) throw std::invalid_argument("maxAgentSteps must be >= 1");
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (framesEvery < 0) throw std::invalid_argument("framesEvery must be >= 0");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    CaConfig ca{voters, radius, haltEpsilon, caMaxSteps};
    ca.validate();
}

namespace {

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

}  // namespace

std::string configEcho(const ExperimentConfig& cfg) {
    std::string s = "# config:";
    s += fmt(" seed=%llu voters=%d", static_cast<unsigned long long>(cfg.seed), cfg.voters);
    s += fmt(" so=%g sa=%g ra=%g deposit=%g adapt-frequency=%d decay=%g"
             " divide-self=%d survive-self=%d",
             cfg.agent.sensorOffset, cfg.agent.sensorAngleDeg, cfg.agent.rotationAngleDeg,
             cfg.agent.depositAmount, cfg.agent.adaptFrequency, cfg.agent.decayRate,
             cfg.agent.divideIncludesSelf ? 1 : 0, cfg.agent.surviveIncludesSelf ? 1 : 0);
    s += fmt(" confine=%d confine-floor=%g confine-frac=%g",
             cfg.agent.confineToTrail ? 1 : 0, cfg.agent.confineFloor, cfg.agent.confineFrac);
    s += fmt(" arena-width=%d arena-height=%d amplitude=%d population=%d seed-thickness=%d",
             cfg.enc.arenaWidth, cfg.enc.arenaHeight, cfg.enc.amplitude,
             cfg.enc.populationSize, cfg.enc.seedThickness);
    s += fmt(" stimulus=%g hold-steps=%d sample-interval=%d halt-thickness=%g"
             " max-agent-steps=%lld",
             cfg.stimulusAmount, cfg.holdSteps, cfg.sampleInterval,
             cfg.effectiveHaltThickness(), cfg.maxAgentSteps);
    s += fmt(" radius=%d epsilon=%g ca-max-steps=%lld runs=%d frames-every=%d"
             " render-gain=%g workers=%d",
             cfg.radius, cfg.haltEpsilon, cfg.caMaxSteps, cfg.runs, cfg.framesEvery,
             cfg.renderGain, cfg.workers);
    return s;
}

const char* runStatusName(RunStatus s) {
    switch (s) {
        case RunStatus::Converged: return "ok";
        case RunStatus::TimedOut: return "timeout";
        case RunStatus::Collapsed: return "collapsed";
    }
    return "?";
}

RunRecord runAgentExperiment(const ExperimentConfig& cfg, std::uint64_t runSeed,
                             const std::optional<Election>& election,
                             const std::string& framePrefix) {
    cfg.validate();

    RunRecord rec;
    rec.seed = runSeed;

    WorldState world(cfg.enc.arenaWidth, cfg.enc.arenaHeight, runSeed);
    rec.election = election ? *election : randomElection(cfg.voters, world.rng);
    if (rec.election.size() != cfg.voters) {
        throw std::invalid_argument("election size does not match voter count");
    }
    const MajorityResult truth = trueMajority(rec.election);
    rec.trueWinner = truth.winner;
    rec.trueMajorityPct = truth.majorityPct;

    const StimulusPolyline polyline = buildPolyline(rec.election, cfg.enc);
    const std::vector<Pixel> band = seedRegion(polyline, cfg.enc);
    for (const Particle& p : seedPopulation(band, cfg.enc.populationSize, world.rng)) {
        world.addParticle(p);
    }

    const bool frames = !framePrefix.empty() && cfg.framesEvery > 0;
    long long lastFrameStep = -1;
    auto maybeFrame = [&] {
        if (frames && world.step % cfg.framesEvery == 0) {
            writeWorldFrame(fmt("%s%07lld.pgm", framePrefix.c_str(), world.step), world,
                            cfg.renderGain);
            lastFrameStep = world.step;
        }
    };
    const double haltThr = cfg.effectiveHaltThickness();

    rec.samples.push_back(measure(world));
    maybeFrame();

    for (int i = 0; i < cfg.holdSteps; ++i) {
        world.field.projectStimulus(polyline.pixels, cfg.stimulusAmount);
        schedulerStep(world, cfg.agent, /*suppressMove=*/true);
        maybeFrame();
        if (world.step % cfg.sampleInterval == 0 && world.aliveCount > 0) {
            rec.samples.push_back(measure(world));
        }
    }

    rec.status = RunStatus::TimedOut;
    while (world.step < cfg.maxAgentSteps) {
        schedulerStep(world, cfg.agent);
        maybeFrame();
        // A band that lost most of its material cannot carry the vote signal;
        // halting on the thickness of a residual blob would be a silent
        // garbage readout, so it is surfaced as a collapse instead.
        if (world.aliveCount < cfg.enc.populationSize / 5) {
            rec.status = RunStatus::Collapsed;
            break;
        }
        if (world.step % cfg.sampleInterval == 0) {
            Sample s = measure(world);
            rec.samples.push_back(s);
            if (shouldHalt(s, haltThr)) {
                rec.status = RunStatus::Converged;
                break;
            }
        }
    }

    if (world.aliveCount > 0 &&
        (rec.samples.empty() || rec.samples.back().step != world.step)) {
        rec.samples.push_back(measure(world));
    }
    if (frames && lastFrameStep != world.step) {
        writeWorldFrame(fmt("%s%07lld.pgm", framePrefix.c_str(), world.step), world,
                        cfg.renderGain);
    }

    rec.haltStep = world.step;
    rec.finalPopulation = world.aliveCount;
    if (rec.status == RunStatus::Converged) {
        rec.verdict = readout(rec.samples.back().meanY, cfg.enc);
        rec.verdict.haltStep = world.step;
    }
    return rec;
}

std::vector<RunRecord> runAgentBatch(const ExperimentConfig& cfg, int numElections) {
    cfg.validate();
    if (numElections < 1) {
        throw std::invalid_argument("numElections must be >= 1");
    }
    std::vector<RunRecord> records(numElections);
    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= numElections) return;
            records[i] = runAgentExperiment(cfg, deriveSeed(cfg.seed, i));
        }
    };
    const int workerCount = std::min(cfg.workers, numElections);
    if (workerCount <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workerCount; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return records;
}

BatchSummary summarizeBatch(const std::vector<RunRecord>& records) {
    BatchSummary s;
    s.runs = static_cast<int>(records.size());

    std::set<std::string> seen;
    std::vector<double> errors, truths, estimates;
    double haltSum = 0.0;
    int converged = 0;
    for (const RunRecord& r : records) {
        if (!seen.insert(formatElection(r.election)).second) s.duplicateElections += 1;
        if (!r.converged()) {
            s.failedRuns += 1;
            continue;
        }
        ++converged;
        if (r.verdict.winner == r.trueWinner) s.correctWinners += 1;
        errors.push_back(r.absErrorPct());
        truths.push_back(r.trueMajorityPct);
        estimates.push_back(r.verdict.estimatedMajorityPct);
        haltSum += static_cast<double>(r.haltStep);
    }
    if (converged > 0) {
        double sum = 0.0, maxE = 0.0;
        for (double e : errors) {
            sum += e;
            maxE = std::max(maxE, e);
        }
        s.meanAbsErrorPct = sum / converged;
        s.maxAbsErrorPct = maxE;
        double var = 0.0;
        for (double e : errors) var += (e - s.meanAbsErrorPct) * (e - s.meanAbsErrorPct);
        s.stdAbsErrorPct = std::sqrt(var / converged);
        s.meanHaltStep = haltSum / converged;
        s.pearsonR = converged >= 2 ? pearson(truths, estimates) : 0.0;
    }
    return s;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("pearson needs two equal-length series");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::invalid_argument("pearson undefined for a constant series");
    }
    return sxy / std::sqrt(sxx * syy);
}

CaRunRow runCaExperiment(std::uint64_t seed, int n, int radius, double haltEpsilon,
                         long long maxSteps, const std::optional<Election>& election) {
    Rng rng(seed);
    const Election e = election ? *election : randomElection(n, rng);
    if (e.size() != n) {
        throw std::invalid_argument("election size does not match cell count");
    }
    CaConfig cfg{n, radius, haltEpsilon, maxSteps};
    const CaRunResult result = caRun(initCa(e), cfg);
    const MajorityResult truth = trueMajority(e);
    const MajorityResult est = caReadout(result.finalValue);

    CaRunRow row;
    row.seed = seed;
    row.n = n;
    row.r = radius;
    row.upVotes = e.upVotes();
    row.trueMajorityPct = truth.majorityPct;
    row.finalValue = result.finalValue;
    row.estWinner = est.winner;
    row.correct = !result.timedOut && est.winner == truth.winner;
    row.haltSteps = result.haltSteps;
    row.timedOut = result.timedOut;
    return row;
}

const std::vector<int> kSweepVoterCounts = {25, 49, 99, 113, 133, 159, 199, 265, 399, 799};
const std::vector<int> kSweepRadii = {1, 3, 5, 9, 15, 19, 29, 39};

namespace {

std::vector<CaSweepPoint> caSweep(const ExperimentConfig& cfg, const std::vector<int>& ns,
                                  const std::vector<int>& rs, std::vector<CaRunRow>* rows) {
    std::vector<CaSweepPoint> points;
    std::uint64_t pointIndex = 0;
    for (int n : ns) {
        for (int r : rs) {
            CaSweepPoint pt;
            pt.n = n;
            pt.r = r;
            pt.runs = cfg.runs;
            double haltSum = 0.0;
            for (int i = 0; i < cfg.runs; ++i) {
                std::uint64_t seed =
                    deriveSeed(cfg.seed, pointIndex * 1'000'003ull + static_cast<std::uint64_t>(i));
                CaRunRow row = runCaExperiment(seed, n, r, cfg.haltEpsilon, cfg.caMaxSteps);
                if (row.correct) pt.correct += 1;
                haltSum += static_cast<double>(row.haltSteps);
                if (rows) rows->push_back(row);
            }
            pt.meanHaltSteps = haltSum / cfg.runs;
            points.push_back(pt);
            ++pointIndex;
        }
    }
    return points;
}

}  // namespace

std::vector<CaSweepPoint> runCaSweepN(const ExperimentConfig& cfg, std::vector<CaRunRow>* rows) {
    return caSweep(cfg, kSweepVoterCounts, {1}, rows);
}

std::vector<CaSweepPoint> runCaSweepR(const ExperimentConfig& cfg, std::vector<CaRunRow>* rows) {
    return caSweep(cfg, {199}, kSweepRadii, rows);
}

std::string sampleCsv(const ExperimentConfig& cfg, const std::vector<Sample>& samples) {
    std::string out = configEcho(cfg) + "\n";
    out += "step,population,thickness_range,mean_y\n";
    for (const Sample& s : samples) {
        out += fmt("%lld,%d,%.6f,%.6f\n", s.step, s.populationSize, s.thicknessRange, s.meanY);
    }
    return out;
}

std::string verdictCsv(const ExperimentConfig& cfg, const std::vector<RunRecord>& records) {
    std::string out = configEcho(cfg) + "\n";
    out += "seed,n,true_winner,true_majority_pct,est_winner,est_majority_pct,"
           "abs_error_pct,halt_step,final_population,status\n";
    for (const RunRecord& r : records) {
        out += fmt("%llu,%d,%c,%.4f,", static_cast<unsigned long long>(r.seed),
                   r.election.size(), candidateToken(r.trueWinner), r.trueMajorityPct);
        if (r.converged()) {
            out += fmt("%c,%.4f,%.4f,", candidateToken(r.verdict.winner),
                       r.verdict.estimatedMajorityPct, r.absErrorPct());
        } else {
            out += ",,,";
        }
        out += fmt("%lld,%d,%s\n", r.haltStep, r.finalPopulation, runStatusName(r.status));
    }
    return out;
}

std::string batchSummaryCsv(const ExperimentConfig& cfg, const BatchSummary& s) {
    std::string out = configEcho(cfg) + "\n";
    out += "runs,correct_winners,failed_runs,duplicate_elections,mean_abs_error_pct,"
           "max_abs_error_pct,std_abs_error_pct,mean_halt_step,pearson_r\n";
    out += fmt("%d,%d,%d,%d,%.4f,%.4f,%.4f,%.1f,%.6f\n", s.runs, s.correctWinners,
               s.failedRuns, s.duplicateElections, s.meanAbsErrorPct, s.maxAbsErrorPct,
               s.stdAbsErrorPct, s.meanHaltStep, s.pearsonR);
    return out;
}

std::string caRunCsv(const ExperimentConfig& cfg, const std::vector<CaRunRow>& rows) {
    std::string out = configEcho(cfg) + "\n";
    out += "seed,n,r,up_votes,true_majority_pct,final_value,est_winner,correct,halt_steps\n";
    for (const CaRunRow& r : rows) {
        out += fmt("%llu,%d,%d,%d,%.4f,%.6f,%c,%d,%lld\n",
                   static_cast<unsigned long long>(r.seed), r.n, r.r, r.upVotes,
                   r.trueMajorityPct, r.finalValue, candidateToken(r.estWinner),
                   r.correct ? 1 : 0, r.haltSteps);
    }
    return out;
}

std::string caSweepCsv(const ExperimentConfig& cfg, const std::vector<CaSweepPoint>& points) {
    std::string out = configEcho(cfg) + "\n";
    out += "n,r,runs,correct,accuracy_pct,mean_halt_steps\n";
    for (const CaSweepPoint& p : points) {
        out += fmt("%d,%d,%d,%d,%.2f,%.1f\n", p.n, p.r, p.runs, p.correct,
                   100.0 * p.correct / p.runs, p.meanHaltSteps);
    }
    return out;
}

void writeTextFile(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    f << contents;
}

void writeWorldFrame(const std::string& path, const WorldState& world, double renderGain) {
    std::vector<std::uint8_t> img = renderField(world.field, renderGain);
    const int w = world.occupancy.width();
    for (int y = 0; y < world.occupancy.height(); ++y) {
        for (int x = 0; x < w; ++x) {
            if (!world.occupancy.emptyAt(x, y)) {
                img[static_cast<std::size_t>(y) * w + x] = 255;
            }
        }
    }
    writePgm(path, w, world.occupancy.height(), img);
}

}  // namespace dcsim
