#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "vbeam/cli.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int grid_psi = 0;
    int grid_angle = 0;
    std::size_t samples = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config, "experiment config (JSON)")
        ->required();
    cmd->add_option("--out", flags.out, "output directory");
    cmd->add_option("--seed", flags.seed, "random seed override")
        ->trigger_on_parse()
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--grid-psi", flags.grid_psi,
                    "phase lattice points per dimension");
    cmd->add_option("--grid-angle", flags.grid_angle, "azimuth grid points");
    cmd->add_option("--samples", flags.samples, "Monte Carlo sample count");
}

vbeam::ExperimentConfig load(const CommonFlags& flags) {
    vbeam::ExperimentConfig cfg = vbeam::load_config(flags.config);
    vbeam::Overrides o;
    if (!flags.out.empty()) o.out_dir = flags.out;
    if (flags.seed_set) o.seed = flags.seed;
    if (flags.grid_psi > 0) o.grid_psi = flags.grid_psi;
    if (flags.grid_angle > 0) o.grid_angle = flags.grid_angle;
    if (flags.samples > 0) o.samples = flags.samples;
    vbeam::apply_overrides(cfg, o);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust broadcast beamforming toolkit"};
    app.require_subcommand(1);

    CommonFlags verify_flags, cdf_flags, pattern_flags, sweep_flags;
    CLI::App* verify =
        app.add_subcommand("verify", "evaluate the full claim registry");
    add_common(verify, verify_flags);
    CLI::App* cdf = app.add_subcommand("cdf", "burst-sum CDFs per scheme");
    add_common(cdf, cdf_flags);
    CLI::App* pattern = app.add_subcommand(
        "pattern", "equivalent transmit pattern and worst-case angles");
    add_common(pattern, pattern_flags);
    CLI::App* sweep =
        app.add_subcommand("sweep", "slope scale sweep of the phase-infimum");
    add_common(sweep, sweep_flags);

    try {
        app.parse(argc, argv);
        if (verify->parsed())
            return vbeam::cmd_verify(load(verify_flags), std::cout);
        if (cdf->parsed()) return vbeam::cmd_cdf(load(cdf_flags), std::cout);
        if (pattern->parsed())
            return vbeam::cmd_pattern(load(pattern_flags), std::cout);
        if (sweep->parsed())
            return vbeam::cmd_sweep(load(sweep_flags), std::cout);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
