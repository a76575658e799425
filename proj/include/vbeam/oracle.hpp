#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vbeam/antennas.hpp"
#include "vbeam/hybrid.hpp"
#include "vbeam/schemes.hpp"

namespace vbeam {

// Exhaustive-search resolution. A slope_range with upper < lower selects
// the default [0, 2pi/T], one full period of the burst sum's slope
// dependence.
struct GridSpec {
    int psi_points = 33;
    int slope_points = 17;
    std::array<double, 2> slope_range{0.0, -1.0};
    int angle_points = 360;
};

// Throws std::invalid_argument if any point count is < 2.
void validate_grid(const GridSpec& grid);

// Hard ceiling on brute-force burst-sum evaluations per call.
inline constexpr std::uint64_t kMaxGridEvaluations = 100000000;

// Minimum burst sum over effective phases on a uniform lattice with
// psi_points values per free dimension; psi_s[0] and psi_r[0] stay fixed
// at 0. Throws std::length_error when the lattice exceeds the evaluation
// ceiling.
struct InfResult {
    double value = 0.0;
    std::vector<double> psi_s, psi_r;  // argmin, first grid point on ties
};

InfResult inf_over_phases(Scheme scheme, const SystemConfig& cfg,
                          const SlopeSet& slopes,
                          const std::vector<double>& g_s,
                          const std::vector<double>& g_r, int psi_points);

// Same search with the receive side split into ports combined by MRC.
InfResult inf_over_phases_mrc(Scheme tx_scheme, const SystemConfig& cfg,
                              const PortPartition& partition,
                              const SlopeSet& slopes,
                              const std::vector<double>& g_s,
                              const std::vector<double>& g_r, int psi_points);

// Brute-force outer search over slope assignments (first element of each
// side pinned to slope 0; the burst sum is invariant to common slope
// shifts). Returns the slope set whose phase-infimum is largest.
struct SupInfResult {
    double value = 0.0;
    SlopeSet slopes;
    InfResult inf;
};

SupInfResult sup_inf_search(Scheme scheme, const SystemConfig& cfg,
                            const std::vector<double>& g_s,
                            const std::vector<double>& g_r,
                            const GridSpec& grid);

// Specialization of the outer search to the refined zero-set lattice
// x = q*pi/(refinement*K): every candidate slope difference lands on or
// between zero-set points, which is where near-optimal sets live. Used to
// show no slope set reaches the ceiling when Lr*Ls > K.
struct NecessityResult {
    double bound = 0.0;     // K * g_bar
    double best_inf = 0.0;  // max over candidates of the phase-infimum
    double margin_rel = 0.0;  // (bound - best_inf) / bound
    SlopeSet best;
};

NecessityResult necessity_search(Scheme scheme, const SystemConfig& cfg,
                                 const std::vector<double>& g_s,
                                 const std::vector<double>& g_r,
                                 int refinement, int psi_points);

// Angle pair minimizing K * g_bar over the azimuth grid; ties resolve to
// the smallest phi_r, then smallest phi_s.
struct WorstAngles {
    double phi_r = 0.0;
    double phi_s = 0.0;
    double value = 0.0;
};

WorstAngles worst_case_angles(int K,
                              const std::vector<AntennaPattern>& tx_patterns,
                              const std::vector<AntennaPattern>& rx_patterns,
                              int angle_points);

// Monte Carlo moments of the oscillatory remainder J = burst sum - K*g_bar
// over phases drawn uniformly from [0,2pi)^(Lr+Ls). std_error is the
// standard error of the mean. Requires samples >= 1000; bit-reproducible
// for a fixed (seed, samples).
struct AverageJ {
    double mean = 0.0;
    double std_error = 0.0;
    double max_abs = 0.0;
    std::size_t samples = 0;
};

AverageJ average_J(Scheme scheme, const SystemConfig& cfg,
                   const SlopeSet& slopes, const std::vector<double>& g_s,
                   const std::vector<double>& g_r, std::size_t samples,
                   std::uint64_t seed);

// Checks that the port-summed burst sum attains its ceiling
// K * port_g_bar_sum for the given slopes (per-port optimality).
struct MrcBoundResult {
    bool ok = false;
    double inf = 0.0;
    double bound = 0.0;
};

MrcBoundResult mrc_bound_check(Scheme tx_scheme, const SystemConfig& cfg,
                               const PortPartition& partition,
                               const SlopeSet& slopes,
                               const std::vector<double>& g_s,
                               const std::vector<double>& g_r, int psi_points,
                               double rel_tol = 1e-6);

}  // namespace vbeam
