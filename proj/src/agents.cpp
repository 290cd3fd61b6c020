#include "agents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dcsim {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double normalizeDeg(double a) {
    a = std::fmod(a, 360.0);
    return a < 0.0 ? a + 360.0 : a;
}

}  // namespace

void AgentParams::validate() const {
    if (sensorOffset < 3.0) {
        throw std::invalid_argument("sensorOffset must be >= 3 px");
    }
    if (stepLength <= 0.0) {
        throw std::invalid_argument("stepLength must be positive");
    }
    if (adaptFrequency < 1) {
        throw std::invalid_argument("adaptFrequency must be >= 1");
    }
    if (!(decayRate >= 0.0 && decayRate < 1.0)) {
        throw std::invalid_argument("decayRate must be in [0, 1)");
    }
    if (depositAmount < 0.0) {
        throw std::invalid_argument("depositAmount must be non-negative");
    }
}

OccupancyGrid::OccupancyGrid(int width, int height) : width_(width), height_(height) {
    cells_.assign(static_cast<std::size_t>(width) * height, -1);
}

int OccupancyGrid::countWindow(int cx, int cy, int halfSpan) const {
    int count = 0;
    for (int dy = -halfSpan; dy <= halfSpan; ++dy) {
        int y = cy + dy;
        if (y < 0 || y >= height_) continue;
        for (int dx = -halfSpan; dx <= halfSpan; ++dx) {
            if (!emptyAt(wrapX(cx + dx, width_), y)) ++count;
        }
    }
    return count;
}

int OccupancyGrid::occupiedCount() const {
    int count = 0;
    for (std::int32_t c : cells_) {
        if (c >= 0) ++count;
    }
    return count;
}

std::int32_t WorldState::addParticle(const Particle& p) {
    std::int32_t id;
    if (!freeSlots.empty()) {
        id = freeSlots.back();
        freeSlots.pop_back();
        particles[id] = p;
    } else {
        id = static_cast<std::int32_t>(particles.size());
        particles.push_back(p);
    }
    particles[id].alive = true;
    occupancy.set(cellX(particles[id]), cellY(particles[id]), id);
    ++aliveCount;
    return id;
}

void WorldState::removeParticle(std::int32_t id) {
    Particle& p = particles[id];
    occupancy.clear(cellX(p), cellY(p));
    p.alive = false;
    freeSlots.push_back(id);
    --aliveCount;
}

WorldState makeWorld(int width, int height, std::uint64_t seed,
                     const std::vector<Particle>& particles) {
    WorldState world(width, height, seed);
    world.particles.reserve(particles.size() * 2);
    for (const Particle& p : particles) {
        if (!world.occupancy.emptyAt(world.cellX(p), world.cellY(p))) {
            throw std::invalid_argument("two particles seeded into the same cell");
        }
        world.addParticle(p);
    }
    return world;
}

void sensoryStage(Particle& p, const TrailField& field, const AgentParams& params, Rng& rng) {
    const double so = params.sensorOffset;
    const double sa = params.sensorAngleDeg;
    const double ra = params.rotationAngleDeg;

    auto sense = [&](double offsetDeg) {
        double a = (p.headingDeg + offsetDeg) * kDegToRad;
        return field.sample(p.x + so * std::cos(a), p.y + so * std::sin(a));
    };
    const double f = sense(0.0);
    const double fl = sense(sa);
    const double fr = sense(-sa);

    // No usable signal at any sensor: tumble. Without this, a particle that
    // wanders off the material keeps its heading over flat ground and walks
    // away ballistically instead of diffusing back to the trail gradient.
    if (f < params.sensorFloor && fl < params.sensorFloor && fr < params.sensorFloor) {
        p.headingDeg = rng.nextAngleDeg();
        return;
    }

    if (f > fl && f > fr) {
        return;  // strongest ahead, keep course
    }
    if (f < fl && f < fr) {
        p.headingDeg = normalizeDeg(p.headingDeg + (rng.nextBool() ? ra : -ra));
    } else if (fl < fr) {
        p.headingDeg = normalizeDeg(p.headingDeg - ra);
    } else if (fr < fl) {
        p.headingDeg = normalizeDeg(p.headingDeg + ra);
    }
    // fl == fr: keep course
}

bool motorStage(std::int32_t id, WorldState& world, const AgentParams& params,
                bool suppressMove) {
    Particle& p = world.particles[id];

    if (suppressMove) {
        world.field.deposit(world.cellX(p), world.cellY(p), params.depositAmount);
        p.movedLastStep = true;
        return true;
    }

    const double a = p.headingDeg * kDegToRad;
    const double nx = wrapXf(p.x + params.stepLength * std::cos(a),
                             world.field.width());
    const double ny = p.y + params.stepLength * std::sin(a);

    const int curX = world.cellX(p);
    const int curY = world.cellY(p);
    const int dstX = static_cast<int>(nx);
    const int dstY = static_cast<int>(std::floor(ny));

    const bool insideVertically = ny >= 0.0 && dstY < world.field.height();
    const bool sameCell = dstX == curX && dstY == curY;
    // The material moves within its own trail envelope: a weak-trail
    // destination counts as blocked, the same as an occupied cell. A particle
    // stranded outside the envelope (its own cell is below the floor) may
    // still climb the trail gradient, so it walks back to the material
    // instead of freezing in place; deposit noise cannot leak particles out
    // because the exemption never applies on-envelope.
    const double floor = std::max(params.confineFloor, world.confineFloorNow);
    const double dstTrail = world.field.at(dstX, dstY);
    const bool onTrail = sameCell || !params.confineToTrail ||
                         dstTrail >= floor ||
                         (world.field.at(curX, curY) < floor &&
                          dstTrail > world.field.at(curX, curY));
    if (insideVertically && onTrail &&
        (sameCell || world.occupancy.emptyAt(dstX, dstY))) {
        world.occupancy.clear(curX, curY);
        p.x = nx;
        p.y = ny;
        world.occupancy.set(dstX, dstY, id);
        world.field.deposit(dstX, dstY, params.depositAmount);
        p.movedLastStep = true;
        return true;
    }
    if (params.blockedRandomizesHeading) {
        p.headingDeg = world.rng.nextAngleDeg();
    }
    p.movedLastStep = false;
    return false;
}

int tryDivide(std::int32_t id, WorldState& world, const AgentParams& params) {
    const Particle& p = world.particles[id];
    if (!p.movedLastStep) return 0;

    const int cx = world.cellX(p);
    const int cy = world.cellY(p);
    int count = world.occupancy.countWindow(cx, cy, 4);
    if (!params.divideIncludesSelf) count -= 1;
    if (count < params.divideMin || count > params.divideMax) return 0;
    if (world.occupancy.countWindow(cx, cy, 1) - 1 < params.divideContactMin) return 0;

    // empty cells of the 3x3 neighbourhood, deterministic scan order
    Pixel empties[8];
    int numEmpty = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        int y = cy + dy;
        if (y < 0 || y >= world.field.height()) continue;
        for (int dx = -1; dx <= 1; ++dx) {
            int x = wrapX(cx + dx, world.field.width());
            // children appear only inside the trail envelope; births on the
            // dark fringe would seed stragglers beyond the band boundary
            if (params.confineToTrail &&
                world.field.at(x, y) < std::max(params.confineFloor, world.confineFloorNow)) {
                continue;
            }
            if (world.occupancy.emptyAt(x, y)) {
                empties[numEmpty++] = {x, y};
            }
        }
    }
    if (numEmpty == 0) return 0;

    const Pixel cell = empties[world.rng.nextBelow(numEmpty)];
    Particle child;
    child.x = cell.x + 0.5;
    child.y = cell.y + 0.5;
    child.headingDeg = world.rng.nextAngleDeg();
    child.alive = true;
    child.movedLastStep = false;
    world.addParticle(child);
    return 1;
}

bool applySurvival(std::int32_t id, WorldState& world, const AgentParams& params) {
    const Particle& p = world.particles[id];
    const int cx = world.cellX(p);
    const int cy = world.cellY(p);
    if (params.cullDetached && world.occupancy.countWindow(cx, cy, 4) == 1) {
        world.removeParticle(id);
        return false;
    }
    int count = world.occupancy.countWindow(cx, cy, 2);
    if (!params.surviveIncludesSelf) count -= 1;
    if (count >= params.surviveMin && count <= params.surviveMax) return true;
    world.removeParticle(id);
    return false;
}

namespace {

std::vector<std::int32_t> shuffledAlive(WorldState& world) {
    std::vector<std::int32_t> ids;
    ids.reserve(world.aliveCount);
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(world.particles.size()); ++i) {
        if (world.particles[i].alive) ids.push_back(i);
    }
    world.rng.shuffle(ids);
    return ids;
}

}  // namespace

StepStats agentPass(WorldState& world, const AgentParams& params, bool suppressMove) {
    StepStats stats;
    const std::vector<std::int32_t> order = shuffledAlive(world);
    // Two distinct stages over the whole population: every particle senses
    // the same post-diffusion field before any particle moves. Interleaving
    // sense-and-move per particle would expose raw same-step deposit spikes
    // (depositAmount on top of a much smaller background) to the sensors of
    // later particles, a strong short-range noise that frays the band edge.
    for (std::int32_t id : order) {
        Particle& p = world.particles[id];
        if (!p.alive) continue;
        sensoryStage(p, world.field, params, world.rng);
    }
    for (std::int32_t id : order) {
        if (!world.particles[id].alive) continue;
        if (motorStage(id, world, params, suppressMove)) {
            stats.successfulMoves += 1;
            stats.depositTotal += params.depositAmount;
        }
    }
    return stats;
}

StepStats adaptationPass(WorldState& world, const AgentParams& params) {
    StepStats stats;
    for (std::int32_t id : shuffledAlive(world)) {
        if (!world.particles[id].alive) continue;
        stats.spawned += tryDivide(id, world, params);
        if (!applySurvival(id, world, params)) stats.removed += 1;
    }
    return stats;
}

StepStats schedulerStep(WorldState& world, const AgentParams& params, bool suppressMove) {
    StepStats stats = agentPass(world, params, suppressMove);
    if (world.step % params.adaptFrequency == 0) {
        StepStats adapt = adaptationPass(world, params);
        stats.spawned += adapt.spawned;
        stats.removed += adapt.removed;
    }
    world.field.diffuseAndDecay(params.decayRate);
    if (params.confineToTrail && params.confineFrac > 0.0 && world.aliveCount > 0) {
        // The floor tracks the 20th percentile of trail under the particles,
        // not the mean: when part of the band is transiently sparse (weak
        // trail) while the rest is dense, a mean-based floor rises above the
        // sparse segments' trail, freezing them (no movement means no
        // division) and bleeding the population out. The low quantile keeps
        // the envelope anchored to the weakest inhabited segments; on a
        // settled, uniform band it is close to the mean anyway.
        std::vector<double>& under = world.underTrailScratch;
        under.clear();
        for (const Particle& p : world.particles) {
            if (p.alive) under.push_back(world.field.at(world.cellX(p), world.cellY(p)));
        }
        const std::size_t k = (under.size() - 1) / 5;
        std::nth_element(under.begin(), under.begin() + k, under.end());
        world.confineFloorNow = params.confineFrac * under[k];
    }
    world.step += 1;
    return stats;
}

void runHoldPhase(WorldState& world, const std::vector<Pixel>& stimulus, int holdSteps,
                  const AgentParams& params, double stimulusAmount) {
    if (holdSteps < 0) {
        throw std::invalid_argument("holdSteps must be non-negative");
    }
    for (int i = 0; i < holdSteps; ++i) {
        world.field.projectStimulus(stimulus, stimulusAmount);
        schedulerStep(world, params, /*suppressMove=*/true);
    }
}

}  // namespace dcsim
