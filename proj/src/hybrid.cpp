#include "vbeam/hybrid.hpp"

#include <stdexcept>
#include <string>

namespace vbeam {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

// Restriction of a per-element vector to one port's indices.
std::vector<double> take(const std::vector<double>& v,
                         const std::vector<std::size_t>& idx) {
    std::vector<double> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
    return out;
}

double port_packet_snr(Scheme tx_scheme, const SystemConfig& cfg,
                       const PortPartition& partition,
                       const ScenarioDraw& draw, const SlopeSet& slopes,
                       const std::vector<double>& g_s,
                       const std::vector<double>& g_r, int k) {
    double acc = 0.0;
    for (const auto& port : partition.ports) {
        SystemConfig pc = cfg;
        pc.Lr = static_cast<int>(port.size());
        ScenarioDraw pd;
        pd.phi_s = draw.phi_s;
        pd.phi_r = draw.phi_r;
        pd.psi_s = draw.psi_s;
        pd.psi_r = take(draw.psi_r, port);
        SlopeSet ps;
        ps.tx_slopes = slopes.tx_slopes;
        ps.rx_slopes = take(slopes.rx_slopes, port);
        ps.provenance = slopes.provenance;
        const auto pg = take(g_r, port);
        acc += tx_scheme == Scheme::Asn
                   ? asn_packet_snr(pc, pd, ps, g_s, pg, k)
                   : abn_packet_snr(pc, pd, ps, g_s, pg, k);
    }
    return acc;
}

}  // namespace

PortPartition contiguous_partition(const std::vector<int>& sizes) {
    if (sizes.empty()) fail("partition: needs at least one port");
    PortPartition out;
    std::size_t next = 0;
    for (std::size_t p = 0; p < sizes.size(); ++p) {
        if (sizes[p] < 1)
            fail("partition: port " + std::to_string(p) + " size " +
                 std::to_string(sizes[p]) + " must be >= 1");
        std::vector<std::size_t> idx(static_cast<std::size_t>(sizes[p]));
        for (auto& v : idx) v = next++;
        out.ports.push_back(std::move(idx));
    }
    return out;
}

void validate_partition(const PortPartition& partition, int Lr) {
    if (Lr < 1) fail("partition: Lr must be >= 1");
    if (partition.ports.empty()) fail("partition: needs at least one port");
    std::vector<int> seen(static_cast<std::size_t>(Lr), 0);
    for (std::size_t p = 0; p < partition.ports.size(); ++p) {
        if (partition.ports[p].empty())
            fail("partition: port " + std::to_string(p) + " is empty");
        for (std::size_t idx : partition.ports[p]) {
            if (idx >= static_cast<std::size_t>(Lr))
                fail("partition: port " + std::to_string(p) + " index " +
                     std::to_string(idx) + " out of range for Lr = " +
                     std::to_string(Lr));
            if (seen[idx]++)
                fail("partition: element " + std::to_string(idx) +
                     " assigned to more than one port");
        }
    }
    for (int i = 0; i < Lr; ++i)
        if (!seen[static_cast<std::size_t>(i)])
            fail("partition: element " + std::to_string(i) +
                 " not assigned to any port");
}

double mrc_packet_snr(Scheme tx_scheme, const SystemConfig& cfg,
                      const PortPartition& partition,
                      const ScenarioDraw& draw, const SlopeSet& slopes,
                      const std::vector<double>& g_s,
                      const std::vector<double>& g_r, int k) {
    validate_partition(partition, cfg.Lr);
    if (tx_scheme == Scheme::Alamouti)
        fail("port combining supports beamforming or switching transmit "
             "schemes");
    if (g_r.size() != static_cast<std::size_t>(cfg.Lr) ||
        draw.psi_r.size() != static_cast<std::size_t>(cfg.Lr) ||
        slopes.rx_slopes.size() != static_cast<std::size_t>(cfg.Lr))
        fail("g_r, psi_r and rx_slopes must all have configured size Lr");
    return port_packet_snr(tx_scheme, cfg, partition, draw, slopes, g_s, g_r,
                           k);
}

SnrTrace mrc_sum_snr(Scheme tx_scheme, const SystemConfig& cfg,
                     const PortPartition& partition, const ScenarioDraw& draw,
                     const SlopeSet& slopes, const std::vector<double>& g_s,
                     const std::vector<double>& g_r) {
    validate_partition(partition, cfg.Lr);
    if (tx_scheme == Scheme::Alamouti)
        fail("port combining supports beamforming or switching transmit "
             "schemes");
    if (g_r.size() != static_cast<std::size_t>(cfg.Lr) ||
        draw.psi_r.size() != static_cast<std::size_t>(cfg.Lr) ||
        slopes.rx_slopes.size() != static_cast<std::size_t>(cfg.Lr))
        fail("g_r, psi_r and rx_slopes must all have configured size Lr");
    SnrTrace trace;
    trace.per_packet.resize(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k) {
        double v = port_packet_snr(tx_scheme, cfg, partition, draw, slopes,
                                   g_s, g_r, k);
        trace.per_packet[static_cast<std::size_t>(k)] = v;
        trace.sum += v;
    }
    return trace;
}

double port_g_bar_sum(const PortPartition& partition,
                      const std::vector<double>& g_s,
                      const std::vector<double>& g_r) {
    validate_partition(partition, static_cast<int>(g_r.size()));
    double acc = 0.0;
    for (const auto& port : partition.ports)
        acc += g_bar(g_s, take(g_r, port));
    return acc;
}

}  // namespace vbeam
