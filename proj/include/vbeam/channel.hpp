#pragma once

#include <array>
#include <complex>
#include <vector>

#include "vbeam/antennas.hpp"

namespace vbeam {

// Free-space wavelength at the 5.9 GHz ITS band, meters.
inline constexpr double kDefaultWavelength = 299792458.0 / 5.9e9;

// Element positions in meters, element 0 is the phase reference.
struct ArrayGeometry {
    std::vector<std::array<double, 3>> positions;
    double wavelength = kDefaultWavelength;
};

ArrayGeometry make_geometry(std::vector<std::array<double, 3>> positions,
                            double wavelength = kDefaultWavelength);

// n elements along the x axis with the given spacing in wavelengths.
ArrayGeometry uniform_linear_array(std::size_t n, double spacing_wavelengths,
                                   double wavelength = kDefaultWavelength);

// One sampled propagation state: departure/arrival azimuths and the
// per-element effective phases (wrapped to [0, 2pi)).
struct ScenarioDraw {
    double phi_s = 0.0;
    double phi_r = 0.0;
    std::vector<double> psi_s;
    std::vector<double> psi_r;
};

// Phase advance of element `index` relative to element 0 for a planar wave
// at azimuth phi (elevation fixed at the array plane):
//   (2pi/lambda) * (cos(phi), sin(phi), 0) . (u_index - u_0)
double relative_phase(const ArrayGeometry& geom, std::size_t index, double phi);

// Row-major Lr x Ls single-path matrix: H(l,m) = g_s_m * g_r_l *
// exp(j*Omega_s_m) * exp(-j*Omega_r_l).
struct ChannelMatrix {
    std::size_t lr = 0, ls = 0;
    std::vector<std::complex<double>> h;

    std::complex<double>& at(std::size_t l, std::size_t m) {
        return h[l * ls + m];
    }
    const std::complex<double>& at(std::size_t l, std::size_t m) const {
        return h[l * ls + m];
    }
};

ChannelMatrix channel_matrix(const ArrayGeometry& tx,
                             const std::vector<AntennaPattern>& tx_patterns,
                             const ArrayGeometry& rx,
                             const std::vector<AntennaPattern>& rx_patterns,
                             double phi_s, double phi_r);

// Effective phases with explicit weight phase offsets beta:
//   psi_s_m = -Omega_s_m - arg(g_s_m) - beta_s_m   (mod 2pi)
//   psi_r_l = +Omega_r_l - arg(g_r_l) - beta_r_l   (mod 2pi)
ScenarioDraw effective_phases(const ArrayGeometry& tx,
                              const std::vector<AntennaPattern>& tx_patterns,
                              const ArrayGeometry& rx,
                              const std::vector<AntennaPattern>& rx_patterns,
                              double phi_s, double phi_r,
                              const std::vector<double>& beta_s,
                              const std::vector<double>& beta_r);

// Gain magnitudes |g(phi)| for each element's pattern.
std::vector<double> gain_magnitudes(const std::vector<AntennaPattern>& patterns,
                                    double phi);

}  // namespace vbeam
