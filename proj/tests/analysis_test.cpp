#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "analysis.hpp"
#include "errors.hpp"

using namespace dcsim;

namespace {

WorldState worldWithParticlesAt(const std::vector<std::pair<double, double>>& positions) {
    WorldState world(64, 64, 1);
    for (auto [x, y] : positions) {
        Particle p;
        p.x = x;
        p.y = y;
        p.alive = true;
        world.addParticle(p);
    }
    return world;
}

}  // namespace

TEST_CASE("measure on a flat band") {
    WorldState world = worldWithParticlesAt({{1.0, 10.0}, {2.0, 10.0}, {3.0, 10.0}});
    Sample s = measure(world);
    CHECK(s.populationSize == 3);
    CHECK(s.thicknessRange == 0.0);
    CHECK(s.meanY == doctest::Approx(10.0));
}

TEST_CASE("measure thickness spans min to max particle y") {
    WorldState world = worldWithParticlesAt({{1.0, 9.5}, {2.0, 10.5}});
    Sample s = measure(world);
    CHECK(s.thicknessRange == doctest::Approx(1.0));
    CHECK(s.meanY == doctest::Approx(10.0));
}

TEST_CASE("measure on an empty world is an error") {
    WorldState world(16, 16, 1);
    CHECK_THROWS_AS(measure(world), MeasurementError);
}

TEST_CASE("freshly seeded band has thickness about 2A") {
    EncodingParams p;
    Rng rng(31);
    Election e = parseElection("C,T,C,C,T,C,T,T,C");
    auto band = seedRegion(buildPolyline(e, p), p);
    WorldState world(p.arenaWidth, p.arenaHeight, 5);
    for (const Particle& part : seedPopulation(band, p.populationSize, rng)) {
        world.addParticle(part);
    }
    Sample s = measure(world);
    // polyline extremes sit at centreY +/- amplitude; seeding dilates by the
    // band thickness
    CHECK(s.thicknessRange >= 2.0 * p.amplitude - 2.0);
    CHECK(s.thicknessRange <= 2.0 * p.amplitude + p.seedThickness + 1.0);
}

TEST_CASE("shouldHalt is inclusive at the threshold") {
    Sample s;
    s.thicknessRange = 10.0;
    CHECK(shouldHalt(s, 10.0));
    s.thicknessRange = 10.5;
    CHECK_FALSE(shouldHalt(s, 10.0));
    s.thicknessRange = 0.0;
    CHECK(shouldHalt(s, 10.0));
    CHECK_THROWS_AS(shouldHalt(s, 0.0), std::invalid_argument);
}

TEST_CASE("readout maps band offset to winner and majority size") {
    EncodingParams p;  // centreY 150, amplitude 50

    SUBCASE("band at centreY - A is a unanimous up win") {
        Verdict v = readout(100.0, p);
        CHECK(v.winner == Candidate::Clanton);
        CHECK(v.estimatedMajorityPct == doctest::Approx(100.0));
    }
    SUBCASE("band at centreY + 0.2*A gives the down candidate 60%") {
        Verdict v = readout(160.0, p);
        CHECK(v.winner == Candidate::Tramp);
        CHECK(v.estimatedMajorityPct == doctest::Approx(60.0));
    }
    SUBCASE("centre line readout is indeterminate") {
        CHECK_THROWS_AS(readout(150.0, p), IndeterminateResultError);
    }
    SUBCASE("offsets beyond the amplitude saturate at 100%") {
        CHECK(readout(150.0 + 75.0, p).estimatedMajorityPct == doctest::Approx(100.0));
    }
}

TEST_CASE("readout mirror symmetry about the centre line") {
    EncodingParams p;
    for (double d : {0.5, 3.0, 17.5, 42.0, 50.0, 80.0}) {
        Verdict up = readout(p.centreY() - d, p);
        Verdict down = readout(p.centreY() + d, p);
        CHECK(up.winner == Candidate::Clanton);
        CHECK(down.winner == Candidate::Tramp);
        CHECK(up.estimatedMajorityPct == down.estimatedMajorityPct);
    }
}

TEST_CASE("estimated majority is monotone in the band offset") {
    EncodingParams p;
    double prev = 50.0;
    for (double d = 0.5; d <= 90.0; d += 0.5) {
        const double pct = readout(p.centreY() + d, p).estimatedMajorityPct;
        CHECK(pct >= prev);
        CHECK(pct <= 100.0);
        prev = pct;
    }
    CHECK(prev == doctest::Approx(100.0));
}

TEST_CASE("trueMajority counts votes directly") {
    SUBCASE("6 up / 3 down") {
        MajorityResult r = trueMajority(parseElection("C,C,C,C,C,C,T,T,T"));
        CHECK(r.winner == Candidate::Clanton);
        CHECK(r.majorityPct == doctest::Approx(66.67).epsilon(1e-3));
    }
    SUBCASE("8 up / 1 down") {
        MajorityResult r = trueMajority(parseElection("C,C,C,C,C,C,C,C,T"));
        CHECK(r.majorityPct == doctest::Approx(88.89).epsilon(1e-3));
    }
    SUBCASE("single down vote") {
        MajorityResult r = trueMajority(Election{{Candidate::Tramp}});
        CHECK(r.winner == Candidate::Tramp);
        CHECK(r.majorityPct == doctest::Approx(100.0));
    }
}
