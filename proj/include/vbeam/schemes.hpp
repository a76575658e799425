#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "vbeam/channel.hpp"

namespace vbeam {

// Burst parameters. K packets per burst at period T seconds; Tm is the
// payload duration used by the intra-packet drift diagnostic (Tm <= T/10).
struct SystemConfig {
    int K = 1;
    double T = 0.1;
    double Tm = 0.001;
    int Ls = 1;
    int Lr = 1;
};

SystemConfig make_config(int K, double T, double Tm, int Ls, int Lr);

// Phase slopes in rad/s. tx_slopes is empty for schemes that do not sweep
// the transmit side (antenna switching, space-time coding).
struct SlopeSet {
    std::vector<double> tx_slopes;
    std::vector<double> rx_slopes;
    std::string provenance;  // "construct:..." or "explicit"
};

struct SnrTrace {
    std::vector<double> per_packet;
    double sum = 0.0;
};

enum class Scheme { Abn, Asn, Alamouti };

Scheme scheme_from_string(const std::string& name);
std::string to_string(Scheme s);

// Receive combining weight for element l at time t:
//   w_l = exp(-j*(alpha_r_l * t + beta_r_l))
std::complex<double> acn_weight(std::size_t l, double t,
                                const std::vector<double>& rx_slopes,
                                const std::vector<double>& rx_offsets);

// Shared coherent factor |sum_l g_l * exp(-j*(psi_l - alpha_l*t))|^2,
// accumulated left to right.
double coherent_power(const std::vector<double>& gains,
                      const std::vector<double>& psi,
                      const std::vector<double>& slopes, double t);

// Normalized per-packet SNR of packet k (t = k*T), beamforming on both
// sides with per-element phase slopes:
//   (1/(Lr*Ls)) * |sum_m g_s_m e^{-j(psi_s_m - alpha_s_m t)}|^2
//               * |sum_l g_r_l e^{-j(psi_r_l - alpha_r_l t)}|^2
double abn_packet_snr(const SystemConfig& cfg, const ScenarioDraw& draw,
                      const SlopeSet& slopes, const std::vector<double>& g_s,
                      const std::vector<double>& g_r, int k);

// Transmit antenna switching: packet k uses antenna rem(k, Ls) at full
// power; receive side beamforms as usual.
double asn_packet_snr(const SystemConfig& cfg, const ScenarioDraw& draw,
                      const SlopeSet& slopes, const std::vector<double>& g_s,
                      const std::vector<double>& g_r, int k);

// Two-antenna space-time block code: per-packet SNR is the transmit-averaged
// power (sum_m g_s_m^2)/2 times the receive beamforming factor. Requires
// Ls == 2.
double alamouti_packet_snr(const SystemConfig& cfg, const ScenarioDraw& draw,
                           const SlopeSet& slopes,
                           const std::vector<double>& g_s,
                           const std::vector<double>& g_r, int k);

// Full symbol-level check of the space-time decode path. Transmits the
// symbol pair (s0, s1) over `draws` noisy realizations at packet k and
// combines with the standard conjugate decoder. `measured_snr` is the Monte
// Carlo estimate of (combined signal power)/(combined noise power) divided
// by 1/noise_power, i.e. directly comparable to alamouti_packet_snr.
struct AlamoutiCheck {
    std::complex<double> decoded0;     // noiseless decode of s0, unit-energy
    std::complex<double> decoded1;     // noiseless decode of s1
    double measured_snr = 0.0;         // Monte Carlo, normalized by rho
};

AlamoutiCheck alamouti_symbol_check(const SystemConfig& cfg,
                                    const ScenarioDraw& draw,
                                    const SlopeSet& slopes,
                                    const std::vector<double>& g_s,
                                    const std::vector<double>& g_r, int k,
                                    std::complex<double> s0,
                                    std::complex<double> s1,
                                    double noise_power, std::size_t draws,
                                    std::uint64_t seed);

// Burst sum S = sum_k per-packet SNR, left to right.
SnrTrace sum_snr(Scheme scheme, const SystemConfig& cfg,
                 const ScenarioDraw& draw, const SlopeSet& slopes,
                 const std::vector<double>& g_s,
                 const std::vector<double>& g_r);

// Mean packet gain (sum_l g_r_l^2 / Lr) * (sum_m g_s_m^2 / Ls).
double g_bar(const std::vector<double>& g_s, const std::vector<double>& g_r);

// Burst sum split into the phase-independent baseline K*g_bar and the
// oscillatory remainder, each computed by its own explicit cosine sums.
// Invariant: baseline + variation == sum_snr(...).sum.
struct Decomposition {
    double baseline = 0.0;
    double variation = 0.0;
};

Decomposition decompose(Scheme scheme, const SystemConfig& cfg,
                        const ScenarioDraw& draw, const SlopeSet& slopes,
                        const std::vector<double>& g_s,
                        const std::vector<double>& g_r);

// Largest per-packet SNR change when the evaluation instant moves from k*T
// to k*T + Tm, over the whole burst. Diagnostic for the slowly-varying
// weight approximation.
double max_intra_packet_drift(Scheme scheme, const SystemConfig& cfg,
                              const ScenarioDraw& draw, const SlopeSet& slopes,
                              const std::vector<double>& g_s,
                              const std::vector<double>& g_r);

}  // namespace vbeam
