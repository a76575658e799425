#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vbeam/antennas.hpp"
#include "vbeam/hybrid.hpp"
#include "vbeam/oracle.hpp"
#include "vbeam/schemes.hpp"

namespace vbeam {

// Exponential pairwise-error bound: packet k fails with probability
// min(1, exp(-scale * rho * snr_k)).
struct PepModel {
    double scale = 1.0;  // must be > 0
    double rho = 1.0;    // mean SNR, must be > 0
};

// Probability that every packet of the burst fails.
double burst_error_probability(const SnrTrace& trace, const PepModel& model);

// Empirical distribution: values_db ascending, probs[i] = (i+1)/N.
struct Cdf {
    std::vector<double> values_db;
    std::vector<double> probs;
};

// Effective phases assumed per draw when forming the burst-sum CDF.
enum class PsiPolicy { Worst, Uniform, Zero };

PsiPolicy psi_policy_from_string(const std::string& name);

struct CdfOptions {
    Scheme scheme = Scheme::Abn;
    SystemConfig cfg;
    SlopeSet slopes;
    std::vector<AntennaPattern> tx_patterns;
    std::vector<AntennaPattern> rx_patterns;
    const PortPartition* ports = nullptr;  // when set, combine across ports
    std::size_t samples = 1000;            // >= 100
    PsiPolicy policy = PsiPolicy::Uniform;
    std::uint64_t seed = 1;
    int psi_points = 33;  // grid resolution for the Worst policy
};

// Burst-sum distribution over uniformly drawn departure/arrival azimuths.
// The random stream consumes, per sample and in this order: phi_r, phi_s,
// then (Uniform policy only) Lr + Ls effective phases. This keeps draws
// aligned across schemes so per-sample comparisons are exact.
Cdf snr_cdf(const CdfOptions& opt);

// Transmit-average power pattern sum_m |g_s_m(phi)|^2 / Ls on the azimuth
// grid.
std::vector<double> equivalent_tx_pattern(
    const std::vector<AntennaPattern>& tx_patterns);

// values_db[ceil(p*N)-1]-style lower quantile: smallest sampled value v
// with empirical P(X <= v) >= p; p = 0 returns the minimum.
double quantile_db(const Cdf& cdf, double p);

// CSV writers. CDF rows are `snr_db,prob` with snr_db rounded to .01 dB;
// pattern rows are `azimuth_deg,gain_linear`.
void write_cdf_csv(const std::string& path, const Cdf& cdf);
void write_pattern_csv(const std::string& path,
                       const std::vector<double>& pattern);

}  // namespace vbeam
