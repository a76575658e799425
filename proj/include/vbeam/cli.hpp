#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vbeam/metrics.hpp"
#include "vbeam/oracle.hpp"
#include "vbeam/report.hpp"
#include "vbeam/schemes.hpp"
#include "vbeam/slopes.hpp"

namespace vbeam {

// One antenna element's pattern source: a synthesized kind with parameters,
// or a CSV file; either may be rotated.
struct PatternSpec {
    std::string kind;  // ideal_omni | ripple_omni | sector | file
    std::map<std::string, double> params;
    std::string file;
    double rotation_deg = 0.0;
};

// Parsed and validated experiment description. Field names mirror the JSON
// schema documented in the README.
struct ExperimentConfig {
    SystemConfig system;
    std::vector<int> ports;  // empty: one port spanning all Lr elements
    Scheme scheme = Scheme::Abn;

    std::string slope_source = "construct";  // construct | explicit | search
    ConstructVariant variant = ConstructVariant::Primary;
    int lrmax = 0, lsmax = 0;  // 0: use Lr/Ls
    std::vector<double> tx_slopes, rx_slopes;  // explicit source only

    std::vector<PatternSpec> tx_patterns, rx_patterns;

    GridSpec grid;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::string out_dir;

    std::vector<std::string> cdf_schemes;  // default: the configured scheme
    PsiPolicy psi_policy = PsiPolicy::Uniform;
    PepModel pep;

    double sweep_min = 0.9, sweep_max = 1.1;
    int sweep_points = 41;
};

// Loads and validates a JSON config; errors name the offending field.
ExperimentConfig load_config(const std::string& path);

// Command-line overrides applied after loading.
struct Overrides {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid_psi;
    std::optional<int> grid_angle;
    std::optional<std::size_t> samples;
};

void apply_overrides(ExperimentConfig& cfg, const Overrides& o);

// Builds the per-element pattern list for one side (a single spec is
// replicated across all `count` elements).
std::vector<AntennaPattern> build_patterns(
    const std::vector<PatternSpec>& specs, int count, const char* side);

// Fixed claim registry evaluated by cmd_verify, in report order.
const std::vector<std::string>& claim_registry();

// Runs every registry claim, prints one status line per claim, writes
// CSV/JSON reports into the output directory when configured. Returns 0
// iff no claim failed (not-applicable claims do not fail).
int cmd_verify(const ExperimentConfig& cfg, std::ostream& log);

// Writes one CDF file per requested scheme plus a percentile summary
// (0/1/10/50%). Returns 0 on success.
int cmd_cdf(const ExperimentConfig& cfg, std::ostream& log);

// Writes the transmit-side equivalent pattern and the worst-case angle
// report.
int cmd_pattern(const ExperimentConfig& cfg, std::ostream& log);

// Sweeps a common scale factor on all slopes and records the phase-infimum
// of the burst sum at worst-case gains.
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace vbeam
