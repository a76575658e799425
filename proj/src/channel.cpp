#include "vbeam/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vbeam {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

void check_sides(const ArrayGeometry& geom,
                 const std::vector<AntennaPattern>& patterns,
                 const char* side) {
    if (patterns.size() != geom.positions.size())
        fail(std::string(side) + " side: " +
             std::to_string(patterns.size()) + " patterns for " +
             std::to_string(geom.positions.size()) + " elements");
}

}  // namespace

ArrayGeometry make_geometry(std::vector<std::array<double, 3>> positions,
                            double wavelength) {
    if (positions.empty()) fail("geometry: needs at least one element");
    if (!(wavelength > 0.0)) fail("geometry: wavelength must be > 0");
    return ArrayGeometry{std::move(positions), wavelength};
}

ArrayGeometry uniform_linear_array(std::size_t n, double spacing_wavelengths,
                                   double wavelength) {
    if (n == 0) fail("geometry: needs at least one element");
    std::vector<std::array<double, 3>> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[i] = {static_cast<double>(i) * spacing_wavelengths * wavelength,
                  0.0, 0.0};
    return make_geometry(std::move(pos), wavelength);
}

double relative_phase(const ArrayGeometry& geom, std::size_t index,
                      double phi) {
    if (index >= geom.positions.size())
        fail("relative_phase: element index " + std::to_string(index) +
             " out of range for " + std::to_string(geom.positions.size()) +
             " elements");
    const auto& u = geom.positions[index];
    const auto& u0 = geom.positions[0];
    double k = 2.0 * std::numbers::pi / geom.wavelength;
    return k * (std::cos(phi) * (u[0] - u0[0]) +
                std::sin(phi) * (u[1] - u0[1]));
}

std::vector<double> gain_magnitudes(const std::vector<AntennaPattern>& patterns,
                                    double phi) {
    std::vector<double> g(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i)
        g[i] = std::abs(pattern_value(patterns[i], phi));
    return g;
}

ChannelMatrix channel_matrix(const ArrayGeometry& tx,
                             const std::vector<AntennaPattern>& tx_patterns,
                             const ArrayGeometry& rx,
                             const std::vector<AntennaPattern>& rx_patterns,
                             double phi_s, double phi_r) {
    check_sides(tx, tx_patterns, "tx");
    check_sides(rx, rx_patterns, "rx");
    const std::size_t ls = tx.positions.size();
    const std::size_t lr = rx.positions.size();

    std::vector<std::complex<double>> tx_term(ls), rx_term(lr);
    for (std::size_t m = 0; m < ls; ++m)
        tx_term[m] = pattern_value(tx_patterns[m], phi_s) *
                     std::polar(1.0, relative_phase(tx, m, phi_s));
    for (std::size_t l = 0; l < lr; ++l)
        rx_term[l] = pattern_value(rx_patterns[l], phi_r) *
                     std::polar(1.0, -relative_phase(rx, l, phi_r));

    ChannelMatrix out;
    out.lr = lr;
    out.ls = ls;
    out.h.resize(lr * ls);
    for (std::size_t l = 0; l < lr; ++l)
        for (std::size_t m = 0; m < ls; ++m) out.at(l, m) = rx_term[l] * tx_term[m];
    return out;
}

ScenarioDraw effective_phases(const ArrayGeometry& tx,
                              const std::vector<AntennaPattern>& tx_patterns,
                              const ArrayGeometry& rx,
                              const std::vector<AntennaPattern>& rx_patterns,
                              double phi_s, double phi_r,
                              const std::vector<double>& beta_s,
                              const std::vector<double>& beta_r) {
    check_sides(tx, tx_patterns, "tx");
    check_sides(rx, rx_patterns, "rx");
    if (beta_s.size() != tx_patterns.size())
        fail("effective_phases: beta_s size " + std::to_string(beta_s.size()) +
             " does not match " + std::to_string(tx_patterns.size()) +
             " tx elements");
    if (beta_r.size() != rx_patterns.size())
        fail("effective_phases: beta_r size " + std::to_string(beta_r.size()) +
             " does not match " + std::to_string(rx_patterns.size()) +
             " rx elements");

    ScenarioDraw draw;
    draw.phi_s = phi_s;
    draw.phi_r = phi_r;
    draw.psi_s.resize(tx_patterns.size());
    draw.psi_r.resize(rx_patterns.size());
    for (std::size_t m = 0; m < tx_patterns.size(); ++m) {
        double omega = relative_phase(tx, m, phi_s);
        double argg = std::arg(pattern_value(tx_patterns[m], phi_s));
        draw.psi_s[m] = wrap_two_pi(-omega - argg - beta_s[m]);
    }
    for (std::size_t l = 0; l < rx_patterns.size(); ++l) {
        double omega = relative_phase(rx, l, phi_r);
        double argg = std::arg(pattern_value(rx_patterns[l], phi_r));
        draw.psi_r[l] = wrap_two_pi(omega - argg - beta_r[l]);
    }
    return draw;
}

}  // namespace vbeam
