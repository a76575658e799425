#include "vbeam/antennas.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vbeam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

double require_param(const std::map<std::string, double>& params,
                     const std::string& key, const std::string& kind) {
    auto it = params.find(key);
    if (it == params.end())
        fail("synthesize(" + kind + "): missing parameter '" + key + "'");
    return it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known,
                    const std::string& kind) {
    for (const auto& [key, value] : params) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) fail("synthesize(" + kind + "): unknown parameter '" + key + "'");
    }
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        size_t a = field.find_first_not_of(" \t\r");
        size_t b = field.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
    }
    return out;
}

double parse_double(const std::string& s, int line_no, const char* what) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        fail("pattern file line " + std::to_string(line_no) + ": " + what +
             " '" + s + "' is not a number");
    }
    if (pos != s.size())
        fail("pattern file line " + std::to_string(line_no) + ": " + what +
             " '" + s + "' has trailing characters");
    if (!std::isfinite(v))
        fail("pattern file line " + std::to_string(line_no) + ": " + what +
             " '" + s + "' is not finite");
    return v;
}

}  // namespace

double wrap_two_pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double wrap_pm_pi(double x) {
    double r = wrap_two_pi(x);
    return r >= std::numbers::pi ? r - kTwoPi : r;
}

PatternKind pattern_kind_from_string(const std::string& name) {
    if (name == "ideal_omni") return PatternKind::IdealOmni;
    if (name == "ripple_omni") return PatternKind::RippleOmni;
    if (name == "sector") return PatternKind::Sector;
    fail("unknown pattern kind '" + name + "'");
}

double mean_power(const AntennaPattern& p) {
    double acc = 0.0;
    for (const auto& s : p.samples) acc += std::norm(s);
    return acc / static_cast<double>(p.samples.size());
}

AntennaPattern make_pattern(std::vector<std::complex<double>> samples,
                            std::string label) {
    if (samples.size() < 8)
        fail("pattern '" + label + "': needs at least 8 samples, got " +
             std::to_string(samples.size()));
    AntennaPattern p{std::move(samples), std::move(label), 0.0};
    double mp = mean_power(p);
    if (mp <= 0.0) fail("pattern '" + p.label + "': all samples are zero");
    double scale = 1.0 / std::sqrt(mp);
    for (auto& s : p.samples) s *= scale;
    return p;
}

AntennaPattern load_pattern(const std::string& source) {
    std::ifstream in(source);
    if (!in) fail("pattern file '" + source + "': cannot open");

    std::string line;
    int line_no = 0;
    bool have_header = false;
    bool has_phase = false;
    std::vector<double> az_deg, mag, phase;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_fields(line);
        if (!have_header) {
            if (fields.size() == 3 && fields[0] == "azimuth_deg" &&
                fields[1] == "gain_db" && fields[2] == "phase_deg") {
                has_phase = true;
            } else if (fields.size() == 2 && fields[0] == "azimuth_deg" &&
                       fields[1] == "gain_db") {
                has_phase = false;
            } else {
                fail("pattern file line " + std::to_string(line_no) +
                     ": header must be 'azimuth_deg,gain_db' or "
                     "'azimuth_deg,gain_db,phase_deg'");
            }
            have_header = true;
            continue;
        }
        size_t want = has_phase ? 3 : 2;
        if (fields.size() != want)
            fail("pattern file line " + std::to_string(line_no) + ": expected " +
                 std::to_string(want) + " fields, got " +
                 std::to_string(fields.size()));
        double az = parse_double(fields[0], line_no, "azimuth_deg");
        if (az < 0.0 || az >= 360.0)
            fail("pattern file line " + std::to_string(line_no) +
                 ": azimuth_deg " + fields[0] + " outside [0, 360)");
        if (!az_deg.empty() && az <= az_deg.back())
            fail("pattern file line " + std::to_string(line_no) +
                 ": azimuth_deg " + fields[0] + " not strictly increasing");
        double db = parse_double(fields[1], line_no, "gain_db");
        double ph = has_phase
                        ? parse_double(fields[2], line_no, "phase_deg") *
                              std::numbers::pi / 180.0
                        : 0.0;
        az_deg.push_back(az);
        mag.push_back(std::pow(10.0, db / 20.0));
        phase.push_back(ph);
    }
    if (!have_header) fail("pattern file '" + source + "': empty");
    size_t n = az_deg.size();
    if (n < 8)
        fail("pattern file '" + source + "': needs at least 8 rows, got " +
             std::to_string(n));

    // Unwrap phases along increasing azimuth, closing the circle through the
    // wrap interval back to row 0.
    std::vector<double> uphase(n + 1);
    uphase[0] = phase[0];
    for (size_t i = 1; i <= n; ++i) {
        double raw = phase[i % n];
        double prev = uphase[i - 1];
        uphase[i] = prev + wrap_pm_pi(raw - prev);
    }

    std::vector<std::complex<double>> samples(kAzimuthSamples);
    for (int i = 0; i < kAzimuthSamples; ++i) {
        double az = 360.0 * static_cast<double>(i) / kAzimuthSamples;
        // Bracketing source interval, treating the pattern as periodic.
        size_t hi = 0;
        while (hi < n && az_deg[hi] <= az) ++hi;
        size_t lo = (hi == 0) ? n - 1 : hi - 1;
        double a0 = az_deg[lo];
        double span = (hi == 0 || hi == n) ? az_deg[0] + 360.0 - az_deg[n - 1]
                                           : az_deg[hi] - a0;
        double da = az - a0;
        if (da < 0.0) da += 360.0;
        double t = (span > 0.0) ? da / span : 0.0;
        double m = mag[lo] + t * (mag[hi % n] - mag[lo]);
        size_t uhi = (hi == 0) ? n : hi;  // unwrapped index for the upper end
        double p = uphase[lo] + t * (uphase[uhi] - uphase[lo]);
        samples[i] = std::polar(m, p);
    }
    return make_pattern(std::move(samples), source);
}

AntennaPattern synthesize(PatternKind kind,
                          const std::map<std::string, double>& params) {
    std::vector<std::complex<double>> samples(kAzimuthSamples);
    switch (kind) {
        case PatternKind::IdealOmni: {
            reject_unknown(params, {}, "ideal_omni");
            for (auto& s : samples) s = 1.0;
            return make_pattern(std::move(samples), "ideal_omni");
        }
        case PatternKind::RippleOmni: {
            reject_unknown(params, {"depth_db", "ripples"}, "ripple_omni");
            double depth_db = require_param(params, "depth_db", "ripple_omni");
            double ripples = require_param(params, "ripples", "ripple_omni");
            if (depth_db < 0.0)
                fail("synthesize(ripple_omni): depth_db must be >= 0");
            if (ripples < 1.0 || ripples != std::floor(ripples))
                fail("synthesize(ripple_omni): ripples must be a positive "
                     "integer");
            int m = static_cast<int>(ripples);
            double r = std::pow(10.0, -depth_db / 10.0);  // min/max power
            double d = (1.0 - r) / (1.0 + r);
            for (int i = 0; i < kAzimuthSamples; ++i) {
                double phi = kTwoPi * i / kAzimuthSamples;
                double power = 1.0 + d * std::cos(m * phi);
                samples[i] = std::sqrt(std::max(power, kMinPowerGain));
            }
            return make_pattern(std::move(samples), "ripple_omni");
        }
        case PatternKind::Sector: {
            reject_unknown(params, {"beamwidth_deg", "floor_db"}, "sector");
            double bw_deg = require_param(params, "beamwidth_deg", "sector");
            double floor_db = require_param(params, "floor_db", "sector");
            if (bw_deg <= 0.0 || bw_deg >= 360.0)
                fail("synthesize(sector): beamwidth_deg must be in (0, 360)");
            if (floor_db < -60.0 || floor_db >= 0.0)
                fail("synthesize(sector): floor_db must be in [-60, 0)");
            double floor = std::pow(10.0, floor_db / 10.0);
            double bw = bw_deg * std::numbers::pi / 180.0;
            for (int i = 0; i < kAzimuthSamples; ++i) {
                double delta = wrap_pm_pi(kTwoPi * i / kAzimuthSamples);
                double power = floor;
                if (std::abs(delta) <= 0.5 * bw)
                    power += (1.0 - floor) * 0.5 *
                             (1.0 + std::cos(kTwoPi * delta / bw));
                samples[i] = std::sqrt(power);
            }
            return make_pattern(std::move(samples), "sector");
        }
    }
    fail("synthesize: unhandled kind");
}

std::complex<double> pattern_value(const AntennaPattern& p, double phi) {
    const int n = static_cast<int>(p.samples.size());
    const double step = kTwoPi / n;
    double u = wrap_two_pi(phi - p.rotation) / step;
    int i0 = static_cast<int>(std::floor(u));
    double frac = u - i0;
    // Snap near-node queries onto the node so grid nodes reproduce stored
    // samples exactly despite wrap/divide rounding.
    if (frac < 1e-9) {
        frac = 0.0;
    } else if (frac > 1.0 - 1e-9) {
        ++i0;
        frac = 0.0;
    }
    i0 %= n;
    if (i0 < 0) i0 += n;
    const auto& s0 = p.samples[i0];
    if (frac == 0.0) return s0;
    const auto& s1 = p.samples[(i0 + 1) % n];
    double m0 = std::abs(s0), m1 = std::abs(s1);
    double a0 = std::arg(s0);
    double dphase = wrap_pm_pi(std::arg(s1) - a0);
    return std::polar(m0 + frac * (m1 - m0), a0 + frac * dphase);
}

AntennaPattern rotated(const AntennaPattern& p, double offset) {
    AntennaPattern out = p;
    out.rotation += offset;
    return out;
}

}  // namespace vbeam
