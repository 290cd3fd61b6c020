#pragma once

#include <cstdint>
#include <vector>

#include "lattice.hpp"
#include "rng.hpp"

namespace dcsim {

struct Particle {
    double x = 0.0;
    double y = 0.0;
    double headingDeg = 0.0;  // [0, 360)
    bool alive = false;
    bool movedLastStep = false;
};

struct AgentParams {
    double sensorOffset = 5.0;     // SO, px; >= 3 for strong local coupling
    double sensorAngleDeg = 90.0;  // SA
    double rotationAngleDeg = 45.0;  // RA
    double depositAmount = 5.0;    // per successful move
    double stepLength = 1.0;       // px, fixed
    int adaptFrequency = 2;        // scheduler steps between division/survival tests
    double decayRate = 0.1;        // trail decay per diffusion step
    // Concentration below which a sensor reading counts as no signal; when
    // all three sensors are below it the particle picks a random heading.
    // Off by default: even a faint diffusion halo gives a valid inward
    // comparison, and tumbling on it replaces that steering with a random
    // walk that frays the band edge.
    double sensorFloor = 0.0;
    // Blocked moves pick a fresh random heading. Without the re-aim the
    // material freezes and fragments, so this stays on by default.
    bool blockedRandomizesHeading = true;
    // Treat weak-trail cells (below confineFloor) as blocked destinations, so
    // the material stays inside its own secreted envelope. The threshold sits
    // well above sensorFloor: fresh deposits diffuse outward and fall below 1
    // within a few px of the material, so the walkable envelope hugs the band
    // instead of following the long shallow diffusion halo.
    bool confineToTrail = true;
    double confineFloor = 0.1;
    // The working floor tracks the material itself: each scheduler step it is
    // set to confineFrac times the 20th-percentile trail under the particles
    // (never below confineFloor). Anchoring the envelope to the weakest
    // inhabited quintile keeps the band compact without a death spiral — a
    // transiently sparse segment drags the floor down with it instead of
    // being frozen out by the denser rest of the band.
    double confineFrac = 0.55;
    // Division: 1..10 particles in the 9x9 window, survival: 0..24 in the 5x5
    // window. The division count excludes the focal particle (an isolated
    // particle has 0 neighbours and does not divide, which is what makes the
    // lower bound meaningful); the survival count includes it (a fully packed
    // 5x5 counts 25 and triggers deletion, which is what makes the upper
    // bound reachable).
    bool divideIncludesSelf = false;
    bool surviveIncludesSelf = true;
    // Division may additionally demand touching neighbours (3x3 ring). Zero
    // by default: the trail envelope already prevents colonies seeding in
    // open space, and a positive demand stops a broken band end (one contact)
    // from regrowing across the gap, turning breaks fatal.
    int divideContactMin = 0;
    int divideMin = 1;
    int divideMax = 10;
    int surviveMin = 0;
    int surviveMax = 24;
    // When set, a particle with an empty 9x9 window around it (fully detached
    // from the material) is removed at the survival test.
    bool cullDetached = false;

    void validate() const;
};

// One-particle-per-cell grid; cells hold the particle's slot index or -1.
class OccupancyGrid {
public:
    OccupancyGrid(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    std::int32_t at(int x, int y) const {
        return cells_[static_cast<std::size_t>(y) * width_ + x];
    }
    bool emptyAt(int x, int y) const { return at(x, y) < 0; }
    void set(int x, int y, std::int32_t id) {
        cells_[static_cast<std::size_t>(y) * width_ + x] = id;
    }
    void clear(int x, int y) { set(x, y, -1); }

    // Occupied cells in the (2*halfSpan+1)^2 window centred on (cx, cy);
    // horizontal wrap, rows beyond the vertical edges contribute nothing.
    int countWindow(int cx, int cy, int halfSpan) const;

    int occupiedCount() const;

private:
    int width_;
    int height_;
    std::vector<std::int32_t> cells_;
};

// Full agent-simulation state: field + occupancy + particles + step counter.
struct WorldState {
    TrailField field;
    OccupancyGrid occupancy;
    std::vector<Particle> particles;
    std::vector<std::int32_t> freeSlots;
    long long step = 0;
    int aliveCount = 0;
    // Working trail-confinement floor; 0 until the first scheduler step has
    // measured the trail under the population (see AgentParams::confineFrac).
    double confineFloorNow = 0.0;
    // Reused buffer for the per-step floor quantile (avoids reallocation).
    std::vector<double> underTrailScratch;
    Rng rng;

    WorldState(int width, int height, std::uint64_t seed)
        : field(width, height), occupancy(width, height), rng(seed) {}

    int cellX(const Particle& p) const { return static_cast<int>(p.x); }
    int cellY(const Particle& p) const { return static_cast<int>(p.y); }

    // Registers a particle in its occupancy cell; the cell must be free.
    std::int32_t addParticle(const Particle& p);
    void removeParticle(std::int32_t id);
};

WorldState makeWorld(int width, int height, std::uint64_t seed,
                     const std::vector<Particle>& particles);

struct StepStats {
    int successfulMoves = 0;
    double depositTotal = 0.0;
    int spawned = 0;
    int removed = 0;
};

// Samples F, FL, FR at offset SO ahead at relative headings {0, +SA, -SA} and
// turns toward the stronger side: keep heading when F dominates, rotate +/-RA
// at random when both side sensors beat F, otherwise rotate by RA toward the
// stronger side sensor.
void sensoryStage(Particle& p, const TrailField& field, const AgentParams& params, Rng& rng);

// Attempts a 1 px move along the heading. On success: position and occupancy
// update, depositAmount lands at the new cell. On a blocked destination
// (occupied or beyond a vertical edge): no move, no deposit, new random
// heading. With suppressMove the position is pinned but deposit continues at
// the current cell and the step counts as a successful move.
bool motorStage(std::int32_t id, WorldState& world, const AgentParams& params,
                bool suppressMove = false);

// Division test: with divideMin..divideMax particles in the 9x9 window and a
// successful move last step, spawn one particle at a random empty cell of the
// 3x3 window. Returns the number spawned (0 or 1).
int tryDivide(std::int32_t id, WorldState& world, const AgentParams& params);

// Survival test: the particle survives iff the 5x5 window count lies in
// surviveMin..surviveMax; otherwise it is deleted and its cell freed.
bool applySurvival(std::int32_t id, WorldState& world, const AgentParams& params);

// Sensory+motor for every alive particle in a fresh random order.
StepStats agentPass(WorldState& world, const AgentParams& params, bool suppressMove = false);

// Division-then-survival per particle, fresh random order.
StepStats adaptationPass(WorldState& world, const AgentParams& params);

// One full scheduler step: agent pass, adaptation every adaptFrequency steps
// (on steps where step % adaptFrequency == 0), diffusion/decay, step counter.
StepStats schedulerStep(WorldState& world, const AgentParams& params,
                        bool suppressMove = false);

// Hold phase: stimulus projected every step, movement suppressed, adaptation
// active so gaps in the seeded band fill in.
void runHoldPhase(WorldState& world, const std::vector<Pixel>& stimulus, int holdSteps,
                  const AgentParams& params, double stimulusAmount);

}  // namespace dcsim
