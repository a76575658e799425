#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "vbeam/antennas.hpp"

using namespace vbeam;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = "test_" + name + ".csv";
    std::ofstream out(path);
    out << body;
    return path;
}

std::string eight_rows(bool phase) {
    std::string body = phase ? "azimuth_deg,gain_db,phase_deg\n"
                             : "azimuth_deg,gain_db\n";
    for (int i = 0; i < 8; ++i) {
        body += std::to_string(45 * i) + ",0";
        if (phase) body += "," + std::to_string(10 * i);
        body += "\n";
    }
    return body;
}

}  // namespace

TEST_CASE("[antennas] synthesized patterns are normalized to unit mean "
          "power") {
    for (auto kind : {PatternKind::IdealOmni, PatternKind::RippleOmni,
                      PatternKind::Sector}) {
        std::map<std::string, double> params;
        if (kind == PatternKind::RippleOmni)
            params = {{"depth_db", 10.0}, {"ripples", 4.0}};
        if (kind == PatternKind::Sector)
            params = {{"beamwidth_deg", 240.0}, {"floor_db", -15.0}};
        const AntennaPattern p = synthesize(kind, params);
        CHECK(std::abs(mean_power(p) - 1.0) <= 1e-9);
    }
}

TEST_CASE("[antennas] ideal omni is constant with zero phase") {
    const AntennaPattern p = synthesize(PatternKind::IdealOmni, {});
    for (double phi : {0.0, 1.0, 3.0, 6.0}) {
        const auto v = pattern_value(p, phi);
        CHECK(std::abs(std::abs(v) - 1.0) <= 1e-12);
        CHECK(std::abs(std::arg(v)) <= 1e-12);
    }
}

TEST_CASE("[antennas] ripple omni hits the requested depth") {
    const AntennaPattern p = synthesize(
        PatternKind::RippleOmni, {{"depth_db", 10.0}, {"ripples", 4.0}});
    double lo = 1e300, hi = 0.0;
    for (const auto& s : p.samples) {
        lo = std::min(lo, std::norm(s));
        hi = std::max(hi, std::norm(s));
    }
    CHECK(std::abs(lo / hi - 0.1) <= 1e-9);
}

TEST_CASE("[antennas] ripple count must be a positive integer") {
    CHECK_THROWS_AS(synthesize(PatternKind::RippleOmni,
                               {{"depth_db", 10.0}, {"ripples", 2.5}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(PatternKind::RippleOmni,
                               {{"depth_db", -1.0}, {"ripples", 4.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(PatternKind::RippleOmni, {{"depth_db", 10.0}}),
                    std::invalid_argument);
}

TEST_CASE("[antennas] sector pattern peaks at zero and floors outside") {
    const AntennaPattern p = synthesize(
        PatternKind::Sector, {{"beamwidth_deg", 120.0}, {"floor_db", -20.0}});
    const double peak = std::norm(pattern_value(p, 0.0));
    const double back = std::norm(pattern_value(p, kPi));
    CHECK(peak > back);
    // Floor is 20 dB below the unnormalized peak; normalization preserves
    // the ratio.
    CHECK(std::abs(back / peak - 0.01) <= 1e-9);
}

TEST_CASE("[antennas] sector parameter validation") {
    CHECK_THROWS_AS(synthesize(PatternKind::Sector,
                               {{"beamwidth_deg", 0.0}, {"floor_db", -20.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(PatternKind::Sector,
                               {{"beamwidth_deg", 360.0}, {"floor_db", -20.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(PatternKind::Sector,
                               {{"beamwidth_deg", 120.0}, {"floor_db", -61.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(PatternKind::Sector,
                               {{"beamwidth_deg", 120.0}, {"floor_db", 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(synthesize(PatternKind::IdealOmni, {{"stray", 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("[antennas] pattern_value reproduces grid nodes exactly") {
    const AntennaPattern p = synthesize(
        PatternKind::RippleOmni, {{"depth_db", 6.0}, {"ripples", 3.0}});
    for (int i : {0, 1, 17, 450, 1800, 3599}) {
        const double phi = kTwoPi * i / kAzimuthSamples;
        const auto v = pattern_value(p, phi);
        CHECK(v == p.samples[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("[antennas] pattern_value wraps modulo 2pi") {
    const AntennaPattern p = synthesize(
        PatternKind::RippleOmni, {{"depth_db", 10.0}, {"ripples", 4.0}});
    for (double phi : {0.3, 2.2, 5.9}) {
        const auto a = pattern_value(p, phi);
        const auto b = pattern_value(p, phi + kTwoPi);
        const auto c = pattern_value(p, phi - kTwoPi);
        CHECK(std::abs(a - b) <= 1e-12);
        CHECK(std::abs(a - c) <= 1e-12);
    }
}

TEST_CASE("[antennas] rotation shifts the lookup azimuth") {
    const AntennaPattern p = synthesize(
        PatternKind::Sector, {{"beamwidth_deg", 90.0}, {"floor_db", -30.0}});
    const double off = 1.25;
    const AntennaPattern r = rotated(p, off);
    for (double phi : {0.0, 0.7, 3.1, 5.5}) {
        const auto a = pattern_value(r, phi);
        const auto b = pattern_value(p, phi - off);
        CHECK(std::abs(a - b) <= 1e-12);
    }
}

TEST_CASE("[antennas] rotations compose exactly") {
    const AntennaPattern p = synthesize(
        PatternKind::Sector, {{"beamwidth_deg", 90.0}, {"floor_db", -30.0}});
    const AntennaPattern r2 = rotated(rotated(p, 0.4), 0.6);
    const AntennaPattern r1 = rotated(p, 1.0);
    for (int i = 0; i < kAzimuthSamples; i += 37) {
        const double phi = kTwoPi * i / kAzimuthSamples;
        CHECK(std::abs(pattern_value(r2, phi) - pattern_value(r1, phi)) <=
              1e-12);
    }
    // Identity rotations keep the stored samples untouched.
    const AntennaPattern r0 = rotated(p, 0.0);
    CHECK(r0.samples == p.samples);
    const AntennaPattern rfull = rotated(p, kTwoPi);
    for (int i = 0; i < kAzimuthSamples; i += 101) {
        const double phi = kTwoPi * i / kAzimuthSamples;
        CHECK(std::abs(pattern_value(rfull, phi) - pattern_value(p, phi)) <=
              1e-12);
    }
}

TEST_CASE("[antennas] csv loader round trips a flat pattern") {
    const std::string path = write_temp("flat", eight_rows(false));
    const AntennaPattern p = load_pattern(path);
    CHECK(p.samples.size() == kAzimuthSamples);
    CHECK(std::abs(mean_power(p) - 1.0) <= 1e-9);
    for (double phi : {0.0, 1.0, 4.0}) {
        CHECK(std::abs(std::abs(pattern_value(p, phi)) - 1.0) <= 1e-9);
        CHECK(std::abs(std::arg(pattern_value(p, phi))) <= 1e-9);
    }
    std::remove(path.c_str());
}

TEST_CASE("[antennas] csv loader interpolates phase along the circle") {
    const std::string path = write_temp("phase", eight_rows(true));
    const AntennaPattern p = load_pattern(path);
    // Phase ramps 10 degrees per 45-degree step; halfway between rows 0
    // and 1 the interpolated phase is 5 degrees.
    const auto v = pattern_value(p, 22.5 * kPi / 180.0);
    CHECK(std::abs(std::arg(v) - 5.0 * kPi / 180.0) <= 1e-9);
    std::remove(path.c_str());
}

TEST_CASE("[antennas] csv loader errors name the offending line") {
    struct Case {
        const char* name;
        std::string body;
        const char* needle;
    };
    const Case cases[] = {
        {"header", "azimuth,gain\n0,0\n", "line 1"},
        {"short", "azimuth_deg,gain_db\n0,0\n10,0\n", "8 rows"},
        {"badnum", "azimuth_deg,gain_db\n0,0\n10,zz\n20,0\n30,0\n40,0\n"
                   "50,0\n60,0\n70,0\n",
         "line 3"},
        {"range",
         "azimuth_deg,gain_db\n0,0\n45,0\n90,0\n135,0\n180,0\n225,0\n"
         "270,0\n360,0\n",
         "line 9"},
        {"order",
         "azimuth_deg,gain_db\n0,0\n45,0\n40,0\n135,0\n180,0\n225,0\n"
         "270,0\n300,0\n",
         "line 4"},
        {"fields",
         "azimuth_deg,gain_db\n0,0\n45,0,3\n90,0\n135,0\n180,0\n225,0\n"
         "270,0\n300,0\n",
         "line 3"},
    };
    for (const auto& c : cases) {
        const std::string path = write_temp(c.name, c.body);
        bool threw = false;
        try {
            load_pattern(path);
        } catch (const std::invalid_argument& e) {
            threw = true;
            CHECK(std::string(e.what()).find(c.needle) != std::string::npos);
        }
        CHECK(threw);
        std::remove(path.c_str());
    }
    CHECK_THROWS_AS(load_pattern("does_not_exist.csv"), std::invalid_argument);
}

TEST_CASE("[antennas] loader resamples gains in linear scale") {
    // Rows alternate 0 dB and -20 dB; midway between rows the linear
    // magnitude is the average of 1 and 0.1.
    std::string body = "azimuth_deg,gain_db\n";
    for (int i = 0; i < 8; ++i)
        body += std::to_string(45 * i) + "," + (i % 2 ? "-20" : "0") + "\n";
    const std::string path = write_temp("linear", body);
    const AntennaPattern p = load_pattern(path);
    const double mid = 22.5 * kPi / 180.0;
    // Normalization rescales; compare against the pattern's own endpoints.
    const double g0 = std::abs(pattern_value(p, 0.0));
    const double g1 = std::abs(pattern_value(p, 45.0 * kPi / 180.0));
    const double gm = std::abs(pattern_value(p, mid));
    CHECK(std::abs(gm - 0.5 * (g0 + g1)) <= 1e-9);
    std::remove(path.c_str());
}

TEST_CASE("[antennas] wrap helpers") {
    CHECK(wrap_two_pi(0.0) == 0.0);
    CHECK(std::abs(wrap_two_pi(-0.5) - (kTwoPi - 0.5)) <= 1e-12);
    CHECK(wrap_two_pi(kTwoPi) == 0.0);
    CHECK(std::abs(wrap_pm_pi(3.0 * kPi) - (-kPi)) <= 1e-12);
    CHECK(std::abs(wrap_pm_pi(0.25) - 0.25) <= 1e-15);
}
