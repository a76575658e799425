#pragma once

#include <cstddef>
#include <vector>

#include "vbeam/schemes.hpp"

namespace vbeam {

// Disjoint receive subarrays, one per digital port. Every receive element
// belongs to exactly one port; ports combine by maximum-ratio combining
// after per-port analog beamforming.
struct PortPartition {
    std::vector<std::vector<std::size_t>> ports;
};

// Consecutive index blocks of the given sizes (all >= 1).
PortPartition contiguous_partition(const std::vector<int>& sizes);

// Exact-cover check against Lr elements; throws std::invalid_argument
// naming the defect (empty port, duplicate index, missing index, range).
void validate_partition(const PortPartition& partition, int Lr);

// Per-packet SNR summed over ports. Each port p beamforms its own
// subarray with the slopes at its element indices; tx_scheme selects the
// transmit-side behavior (two-sided beamforming or antenna switching).
double mrc_packet_snr(Scheme tx_scheme, const SystemConfig& cfg,
                      const PortPartition& partition,
                      const ScenarioDraw& draw, const SlopeSet& slopes,
                      const std::vector<double>& g_s,
                      const std::vector<double>& g_r, int k);

// Burst trace of the port-summed SNR.
SnrTrace mrc_sum_snr(Scheme tx_scheme, const SystemConfig& cfg,
                     const PortPartition& partition, const ScenarioDraw& draw,
                     const SlopeSet& slopes, const std::vector<double>& g_s,
                     const std::vector<double>& g_r);

// sum_p (sum_{l in port p} g_r_l^2 / |port p|) * (sum_m g_s_m^2 / Ls).
// Burst-sum ceiling for the port-summed scheme is K times this value.
double port_g_bar_sum(const PortPartition& partition,
                      const std::vector<double>& g_s,
                      const std::vector<double>& g_r);

}  // namespace vbeam
