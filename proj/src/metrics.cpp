#include "vbeam/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "vbeam/rng.hpp"

namespace vbeam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

double to_db(double linear) {
    return 10.0 * std::log10(std::max(linear, 1e-300));
}

}  // namespace

double burst_error_probability(const SnrTrace& trace, const PepModel& model) {
    if (!(model.scale > 0.0)) fail("pep scale: must be > 0");
    if (!(model.rho > 0.0)) fail("pep rho: must be > 0");
    double prob = 1.0;
    for (double snr : trace.per_packet) {
        if (snr < 0.0) fail("per-packet SNR must be >= 0");
        prob *= std::min(1.0, std::exp(-model.scale * model.rho * snr));
    }
    return prob;
}

PsiPolicy psi_policy_from_string(const std::string& name) {
    if (name == "worst") return PsiPolicy::Worst;
    if (name == "uniform") return PsiPolicy::Uniform;
    if (name == "zero") return PsiPolicy::Zero;
    fail("unknown psi policy '" + name + "'");
}

Cdf snr_cdf(const CdfOptions& opt) {
    if (opt.samples < 100) fail("cdf samples: must be >= 100");
    if (opt.tx_patterns.size() != static_cast<std::size_t>(opt.cfg.Ls))
        fail("tx pattern count does not match configured Ls");
    if (opt.rx_patterns.size() != static_cast<std::size_t>(opt.cfg.Lr))
        fail("rx pattern count does not match configured Lr");
    if (opt.ports) validate_partition(*opt.ports, opt.cfg.Lr);

    Rng rng(opt.seed);
    std::vector<double> values_db;
    values_db.reserve(opt.samples);

    ScenarioDraw draw;
    draw.psi_s.assign(static_cast<std::size_t>(opt.cfg.Ls), 0.0);
    draw.psi_r.assign(static_cast<std::size_t>(opt.cfg.Lr), 0.0);

    for (std::size_t n = 0; n < opt.samples; ++n) {
        draw.phi_r = rng.uniform(0.0, kTwoPi);
        draw.phi_s = rng.uniform(0.0, kTwoPi);
        const auto g_r = gain_magnitudes(opt.rx_patterns, draw.phi_r);
        const auto g_s = gain_magnitudes(opt.tx_patterns, draw.phi_s);

        double sum;
        if (opt.policy == PsiPolicy::Worst) {
            sum = opt.ports
                      ? inf_over_phases_mrc(opt.scheme, opt.cfg, *opt.ports,
                                            opt.slopes, g_s, g_r,
                                            opt.psi_points)
                            .value
                      : inf_over_phases(opt.scheme, opt.cfg, opt.slopes, g_s,
                                        g_r, opt.psi_points)
                            .value;
        } else {
            if (opt.policy == PsiPolicy::Uniform) {
                for (auto& v : draw.psi_r) v = rng.uniform(0.0, kTwoPi);
                for (auto& v : draw.psi_s) v = rng.uniform(0.0, kTwoPi);
            } else {
                std::fill(draw.psi_r.begin(), draw.psi_r.end(), 0.0);
                std::fill(draw.psi_s.begin(), draw.psi_s.end(), 0.0);
            }
            sum = opt.ports
                      ? mrc_sum_snr(opt.scheme, opt.cfg, *opt.ports, draw,
                                    opt.slopes, g_s, g_r)
                            .sum
                      : sum_snr(opt.scheme, opt.cfg, draw, opt.slopes, g_s,
                                g_r)
                            .sum;
        }
        values_db.push_back(to_db(sum));
    }

    std::sort(values_db.begin(), values_db.end());
    Cdf out;
    out.values_db = std::move(values_db);
    out.probs.resize(opt.samples);
    for (std::size_t i = 0; i < opt.samples; ++i)
        out.probs[i] = static_cast<double>(i + 1) /
                       static_cast<double>(opt.samples);
    return out;
}

std::vector<double> equivalent_tx_pattern(
    const std::vector<AntennaPattern>& tx_patterns) {
    if (tx_patterns.empty()) fail("tx pattern list must be non-empty");
    std::vector<double> out(kAzimuthSamples);
    for (int i = 0; i < kAzimuthSamples; ++i) {
        const double phi = kTwoPi * i / kAzimuthSamples;
        double acc = 0.0;
        for (const auto& p : tx_patterns) acc += std::norm(pattern_value(p, phi));
        out[static_cast<std::size_t>(i)] =
            acc / static_cast<double>(tx_patterns.size());
    }
    return out;
}

double quantile_db(const Cdf& cdf, double p) {
    if (cdf.values_db.empty()) fail("cdf is empty");
    if (p < 0.0 || p > 1.0) fail("quantile p must be in [0, 1]");
    const auto n = cdf.values_db.size();
    if (p <= 0.0) return cdf.values_db.front();
    auto idx = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(n)));
    if (idx == 0) idx = 1;
    if (idx > n) idx = n;
    return cdf.values_db[idx - 1];
}

void write_cdf_csv(const std::string& path, const Cdf& cdf) {
    std::ofstream out(path);
    if (!out) fail("cannot open '" + path + "' for writing");
    out << "snr_db,prob\n";
    char line[64];
    for (std::size_t i = 0; i < cdf.values_db.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.2f,%.6f", cdf.values_db[i],
                      cdf.probs[i]);
        out << line << "\n";
    }
}

void write_pattern_csv(const std::string& path,
                       const std::vector<double>& pattern) {
    std::ofstream out(path);
    if (!out) fail("cannot open '" + path + "' for writing");
    out << "azimuth_deg,gain_linear\n";
    char line[64];
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const double deg = 360.0 * static_cast<double>(i) /
                           static_cast<double>(pattern.size());
        std::snprintf(line, sizeof(line), "%.4f,%.10g", deg, pattern[i]);
        out << line << "\n";
    }
}

}  // namespace vbeam
