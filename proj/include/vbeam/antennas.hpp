#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace vbeam {

// Internal azimuth grid: 0.1 degree resolution over [0, 2pi).
inline constexpr int kAzimuthSamples = 3600;

// Synthesized power gains never fall below -60 dB (relative to the unit
// azimuth mean), so |g| > 0 everywhere.
inline constexpr double kMinPowerGain = 1e-6;

// Complex azimuth far field sampled uniformly over [0, 2pi).
// Invariant: mean over the grid of |samples[n]|^2 == 1 (enforced by the
// constructors below). `rotation` shifts the pattern's reference direction:
// value(phi) reads the sample grid at phi - rotation, so rotations compose
// exactly and never resample.
struct AntennaPattern {
    std::vector<std::complex<double>> samples;
    std::string label;
    double rotation = 0.0;
};

enum class PatternKind { IdealOmni, RippleOmni, Sector };

PatternKind pattern_kind_from_string(const std::string& name);

// Normalizes raw samples to unit mean power. Throws std::invalid_argument if
// fewer than 8 samples or all-zero.
AntennaPattern make_pattern(std::vector<std::complex<double>> samples,
                            std::string label);

// CSV loader: header `azimuth_deg,gain_db[,phase_deg]`, azimuth strictly
// increasing in [0, 360), at least 8 rows. Resamples onto the internal grid
// (linear-scale magnitude, unwrapped phase) and normalizes. Errors name the
// offending line.
AntennaPattern load_pattern(const std::string& source);

// Parametric patterns, all normalized to unit azimuth mean power:
//   ideal_omni:  no params; |g| == 1
//   ripple_omni: params depth_db (>= 0), ripples (positive integer M);
//                |g(phi)|^2 proportional to 1 + d*cos(M*phi) with d chosen so
//                min/max power equals 10^(-depth_db/10)
//   sector:      params beamwidth_deg in (0, 360), floor_db in [-60, 0);
//                raised-cosine mainlobe centered at phi = 0 over a constant
//                floor
AntennaPattern synthesize(PatternKind kind,
                          const std::map<std::string, double>& params);

// Linear interpolation between neighboring grid samples (magnitude and
// phase separately); phi wrapped mod 2pi; grid nodes reproduce stored
// samples exactly.
std::complex<double> pattern_value(const AntennaPattern& p, double phi);

// pattern_value(rotated(p, o), phi) == pattern_value(p, phi - o).
AntennaPattern rotated(const AntennaPattern& p, double offset);

// Mean of |samples|^2 over the grid.
double mean_power(const AntennaPattern& p);

// x wrapped into [0, 2pi); negative inputs map into the same range.
double wrap_two_pi(double x);

// x wrapped into [-pi, pi).
double wrap_pm_pi(double x);

}  // namespace vbeam
