#include "vbeam/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "vbeam/rng.hpp"

namespace vbeam {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

void validate_inputs(Scheme scheme, const SystemConfig& cfg,
                     const ScenarioDraw& draw, const SlopeSet& slopes,
                     const std::vector<double>& g_s,
                     const std::vector<double>& g_r) {
    auto want = [](const char* name, std::size_t got, std::size_t need) {
        if (got != need)
            fail(std::string(name) + " size " + std::to_string(got) +
                 " does not match configured " + std::to_string(need));
    };
    want("g_s", g_s.size(), static_cast<std::size_t>(cfg.Ls));
    want("g_r", g_r.size(), static_cast<std::size_t>(cfg.Lr));
    want("psi_s", draw.psi_s.size(), static_cast<std::size_t>(cfg.Ls));
    want("psi_r", draw.psi_r.size(), static_cast<std::size_t>(cfg.Lr));
    want("rx_slopes", slopes.rx_slopes.size(), static_cast<std::size_t>(cfg.Lr));
    if (scheme == Scheme::Abn) {
        want("tx_slopes", slopes.tx_slopes.size(),
             static_cast<std::size_t>(cfg.Ls));
    } else if (!slopes.tx_slopes.empty()) {
        want("tx_slopes", slopes.tx_slopes.size(),
             static_cast<std::size_t>(cfg.Ls));
    }
    if (scheme == Scheme::Alamouti && cfg.Ls != 2)
        fail("space-time scheme requires Ls == 2, got Ls = " +
             std::to_string(cfg.Ls));
}

void validate_packet(const SystemConfig& cfg, int k) {
    if (k < 0 || k >= cfg.K)
        fail("packet index " + std::to_string(k) + " outside burst of K = " +
             std::to_string(cfg.K));
}

// Per-packet SNR at an arbitrary evaluation instant t.
double packet_snr_at(Scheme scheme, const SystemConfig& cfg,
                     const ScenarioDraw& draw, const SlopeSet& slopes,
                     const std::vector<double>& g_s,
                     const std::vector<double>& g_r, int k, double t) {
    const double rx = coherent_power(g_r, draw.psi_r, slopes.rx_slopes, t);
    switch (scheme) {
        case Scheme::Abn: {
            const double tx =
                coherent_power(g_s, draw.psi_s, slopes.tx_slopes, t);
            return tx * rx /
                   (static_cast<double>(cfg.Lr) * static_cast<double>(cfg.Ls));
        }
        case Scheme::Asn: {
            const double g = g_s[static_cast<std::size_t>(k % cfg.Ls)];
            return g * g * rx / static_cast<double>(cfg.Lr);
        }
        case Scheme::Alamouti: {
            const double tx = 0.5 * (g_s[0] * g_s[0] + g_s[1] * g_s[1]);
            return tx * rx / static_cast<double>(cfg.Lr);
        }
    }
    fail("unhandled scheme");
}

// sum_k cos(dy - 2*dx*k) over k = 0..K-1, term by term. Reference route for
// the decomposition; intentionally independent of any closed form.
double cosine_sum(double dx, double dy, int K) {
    double acc = 0.0;
    for (int k = 0; k < K; ++k) acc += std::cos(dy - 2.0 * dx * k);
    return acc;
}

}  // namespace

SystemConfig make_config(int K, double T, double Tm, int Ls, int Lr) {
    if (K < 1) fail("config K: must be >= 1, got " + std::to_string(K));
    if (!(T > 0.0)) fail("config T: must be > 0");
    if (!(Tm > 0.0) || Tm > T / 10.0)
        fail("config Tm: must satisfy 0 < Tm <= T/10");
    if (Ls < 1) fail("config Ls: must be >= 1, got " + std::to_string(Ls));
    if (Lr < 1) fail("config Lr: must be >= 1, got " + std::to_string(Lr));
    return SystemConfig{K, T, Tm, Ls, Lr};
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "abn") return Scheme::Abn;
    if (name == "asn") return Scheme::Asn;
    if (name == "alamouti") return Scheme::Alamouti;
    fail("unknown scheme '" + name + "'");
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::Abn: return "abn";
        case Scheme::Asn: return "asn";
        case Scheme::Alamouti: return "alamouti";
    }
    return "?";
}

std::complex<double> acn_weight(std::size_t l, double t,
                                const std::vector<double>& rx_slopes,
                                const std::vector<double>& rx_offsets) {
    if (l >= rx_slopes.size())
        fail("weight index " + std::to_string(l) + " out of range for " +
             std::to_string(rx_slopes.size()) + " slopes");
    if (rx_offsets.size() != rx_slopes.size())
        fail("rx_offsets size " + std::to_string(rx_offsets.size()) +
             " does not match " + std::to_string(rx_slopes.size()) +
             " slopes");
    return std::polar(1.0, -(rx_slopes[l] * t + rx_offsets[l]));
}

double coherent_power(const std::vector<double>& gains,
                      const std::vector<double>& psi,
                      const std::vector<double>& slopes, double t) {
    double re = 0.0, im = 0.0;
    for (std::size_t l = 0; l < gains.size(); ++l) {
        const double th = psi[l] - slopes[l] * t;
        re += gains[l] * std::cos(th);
        im -= gains[l] * std::sin(th);
    }
    return re * re + im * im;
}

double abn_packet_snr(const SystemConfig& cfg, const ScenarioDraw& draw,
                      const SlopeSet& slopes, const std::vector<double>& g_s,
                      const std::vector<double>& g_r, int k) {
    validate_inputs(Scheme::Abn, cfg, draw, slopes, g_s, g_r);
    validate_packet(cfg, k);
    return packet_snr_at(Scheme::Abn, cfg, draw, slopes, g_s, g_r, k,
                         k * cfg.T);
}

double asn_packet_snr(const SystemConfig& cfg, const ScenarioDraw& draw,
                      const SlopeSet& slopes, const std::vector<double>& g_s,
                      const std::vector<double>& g_r, int k) {
    validate_inputs(Scheme::Asn, cfg, draw, slopes, g_s, g_r);
    validate_packet(cfg, k);
    return packet_snr_at(Scheme::Asn, cfg, draw, slopes, g_s, g_r, k,
                         k * cfg.T);
}

double alamouti_packet_snr(const SystemConfig& cfg, const ScenarioDraw& draw,
                           const SlopeSet& slopes,
                           const std::vector<double>& g_s,
                           const std::vector<double>& g_r, int k) {
    validate_inputs(Scheme::Alamouti, cfg, draw, slopes, g_s, g_r);
    validate_packet(cfg, k);
    return packet_snr_at(Scheme::Alamouti, cfg, draw, slopes, g_s, g_r, k,
                         k * cfg.T);
}

AlamoutiCheck alamouti_symbol_check(const SystemConfig& cfg,
                                    const ScenarioDraw& draw,
                                    const SlopeSet& slopes,
                                    const std::vector<double>& g_s,
                                    const std::vector<double>& g_r, int k,
                                    std::complex<double> s0,
                                    std::complex<double> s1,
                                    double noise_power, std::size_t draws,
                                    std::uint64_t seed) {
    validate_inputs(Scheme::Alamouti, cfg, draw, slopes, g_s, g_r);
    validate_packet(cfg, k);
    if (!(noise_power > 0.0)) fail("noise_power must be > 0");
    if (draws == 0) fail("draws must be >= 1");

    const double t = k * cfg.T;
    const std::size_t lr = g_r.size();

    // Receive combining factor and the two effective symbol-path gains.
    std::vector<std::complex<double>> w(lr);
    std::complex<double> rx_sum = 0.0;
    for (std::size_t l = 0; l < lr; ++l) {
        w[l] = std::polar(1.0, -slopes.rx_slopes[l] * t);
        rx_sum += g_r[l] * std::polar(1.0, -(draw.psi_r[l] - slopes.rx_slopes[l] * t));
    }
    const std::complex<double> c0 =
        (g_s[0] / std::sqrt(2.0)) * std::polar(1.0, -draw.psi_s[0]) * rx_sum;
    const std::complex<double> c1 =
        (g_s[1] / std::sqrt(2.0)) * std::polar(1.0, -draw.psi_s[1]) * rx_sum;
    const double c2 = std::norm(c0) + std::norm(c1);

    AlamoutiCheck out;
    if (c2 > 0.0) {
        out.decoded0 = (std::conj(c0) * (c0 * s0 + c1 * s1) +
                        c1 * std::conj(-c0 * std::conj(s1) +
                                       c1 * std::conj(s0))) /
                       c2;
        out.decoded1 = (std::conj(c1) * (c0 * s0 + c1 * s1) -
                        c0 * std::conj(-c0 * std::conj(s1) +
                                       c1 * std::conj(s0))) /
                       c2;
    }

    Rng rng(seed);
    double noise_acc = 0.0;
    for (std::size_t d = 0; d < draws; ++d) {
        std::complex<double> z0 = 0.0, z1 = 0.0;
        for (std::size_t l = 0; l < lr; ++l)
            z0 += std::conj(w[l]) * rng.complex_gaussian(noise_power);
        for (std::size_t l = 0; l < lr; ++l)
            z1 += std::conj(w[l]) * rng.complex_gaussian(noise_power);
        // Noise reaching each decoded symbol after combining.
        const std::complex<double> e0 = std::conj(c0) * z0 + c1 * std::conj(z1);
        const std::complex<double> e1 = std::conj(c1) * z0 - c0 * std::conj(z1);
        noise_acc += std::norm(e0) + std::norm(e1);
    }
    const double sym_energy = 0.5 * (std::norm(s0) + std::norm(s1));
    const double sig_power = c2 * c2 * 2.0 * sym_energy;
    const double noise_mean = noise_acc / static_cast<double>(draws);
    if (noise_mean > 0.0 && sym_energy > 0.0)
        out.measured_snr =
            sig_power / noise_mean * noise_power / sym_energy;
    return out;
}

SnrTrace sum_snr(Scheme scheme, const SystemConfig& cfg,
                 const ScenarioDraw& draw, const SlopeSet& slopes,
                 const std::vector<double>& g_s,
                 const std::vector<double>& g_r) {
    validate_inputs(scheme, cfg, draw, slopes, g_s, g_r);
    SnrTrace trace;
    trace.per_packet.resize(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k) {
        double v = packet_snr_at(scheme, cfg, draw, slopes, g_s, g_r, k,
                                 k * cfg.T);
        trace.per_packet[static_cast<std::size_t>(k)] = v;
        trace.sum += v;
    }
    return trace;
}

double g_bar(const std::vector<double>& g_s, const std::vector<double>& g_r) {
    if (g_s.empty() || g_r.empty()) fail("g_bar: gains must be non-empty");
    double ts = 0.0, tr = 0.0;
    for (double g : g_s) ts += g * g;
    for (double g : g_r) tr += g * g;
    return (tr / static_cast<double>(g_r.size())) *
           (ts / static_cast<double>(g_s.size()));
}

Decomposition decompose(Scheme scheme, const SystemConfig& cfg,
                        const ScenarioDraw& draw, const SlopeSet& slopes,
                        const std::vector<double>& g_s,
                        const std::vector<double>& g_r) {
    validate_inputs(scheme, cfg, draw, slopes, g_s, g_r);
    const int K = cfg.K;
    const int lr = cfg.Lr;
    const int ls = cfg.Ls;
    const double half_t = 0.5 * cfg.T;

    double r_bar = 0.0, t_bar = 0.0;
    for (double g : g_r) r_bar += g * g;
    for (double g : g_s) t_bar += g * g;
    r_bar /= lr;
    t_bar /= ls;

    Decomposition out;
    out.baseline = K * r_bar * t_bar;

    if (scheme == Scheme::Asn) {
        if (K % ls != 0)
            throw std::domain_error(
                "decomposition unavailable: K = " + std::to_string(K) +
                " is not divisible by Ls = " + std::to_string(ls));
        const int kbar = K / ls;
        double j = 0.0;
        for (int m = 0; m < ls; ++m) {
            const double gm2 = g_s[m] * g_s[m];
            for (int l = 0; l < lr; ++l) {
                for (int i = l + 1; i < lr; ++i) {
                    const double cp = 2.0 * g_r[l] * g_r[i] / lr;
                    const double dx =
                        (slopes.rx_slopes[l] - slopes.rx_slopes[i]) * half_t;
                    const double dy = draw.psi_r[l] - draw.psi_r[i];
                    double acc = 0.0;
                    for (int kp = 0; kp < kbar; ++kp)
                        acc += std::cos(dy - 2.0 * dx * (m + kp * ls));
                    j += gm2 * cp * acc;
                }
            }
        }
        out.variation = j;
        return out;
    }

    double j_rx = 0.0;
    for (int l = 0; l < lr; ++l) {
        for (int i = l + 1; i < lr; ++i) {
            const double cp = 2.0 * g_r[l] * g_r[i] / lr;
            const double dx = (slopes.rx_slopes[l] - slopes.rx_slopes[i]) * half_t;
            const double dy = draw.psi_r[l] - draw.psi_r[i];
            j_rx += cp * cosine_sum(dx, dy, K);
        }
    }

    if (scheme == Scheme::Alamouti) {
        out.variation = t_bar * j_rx;
        return out;
    }

    double j_tx = 0.0;
    double j_cross = 0.0;
    for (int m = 0; m < ls; ++m) {
        for (int jj = m + 1; jj < ls; ++jj) {
            const double dp = 2.0 * g_s[m] * g_s[jj] / ls;
            const double dz = (slopes.tx_slopes[m] - slopes.tx_slopes[jj]) * half_t;
            const double dv = draw.psi_s[m] - draw.psi_s[jj];
            j_tx += dp * cosine_sum(dz, dv, K);
            for (int l = 0; l < lr; ++l) {
                for (int i = l + 1; i < lr; ++i) {
                    const double cp = 2.0 * g_r[l] * g_r[i] / lr;
                    const double dx =
                        (slopes.rx_slopes[l] - slopes.rx_slopes[i]) * half_t;
                    const double dy = draw.psi_r[l] - draw.psi_r[i];
                    double acc = 0.0;
                    for (int k = 0; k < K; ++k)
                        acc += std::cos(dy - 2.0 * dx * k) *
                               std::cos(dv - 2.0 * dz * k);
                    j_cross += cp * dp * acc;
                }
            }
        }
    }
    out.variation = t_bar * j_rx + r_bar * j_tx + j_cross;
    return out;
}

double max_intra_packet_drift(Scheme scheme, const SystemConfig& cfg,
                              const ScenarioDraw& draw, const SlopeSet& slopes,
                              const std::vector<double>& g_s,
                              const std::vector<double>& g_r) {
    validate_inputs(scheme, cfg, draw, slopes, g_s, g_r);
    double worst = 0.0;
    for (int k = 0; k < cfg.K; ++k) {
        const double a =
            packet_snr_at(scheme, cfg, draw, slopes, g_s, g_r, k, k * cfg.T);
        const double b = packet_snr_at(scheme, cfg, draw, slopes, g_s, g_r, k,
                                       k * cfg.T + cfg.Tm);
        worst = std::max(worst, std::abs(b - a));
    }
    return worst;
}

}  // namespace vbeam
