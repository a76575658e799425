#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "vbeam/hybrid.hpp"
#include "vbeam/rng.hpp"
#include "vbeam/slopes.hpp"

using namespace vbeam;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScenarioDraw random_draw(Rng& rng, int ls, int lr) {
    ScenarioDraw d;
    d.psi_s.resize(static_cast<std::size_t>(ls));
    d.psi_r.resize(static_cast<std::size_t>(lr));
    for (auto& p : d.psi_s) p = rng.uniform(0.0, kTwoPi);
    for (auto& p : d.psi_r) p = rng.uniform(0.0, kTwoPi);
    return d;
}

}  // namespace

TEST_CASE("[hybrid] contiguous partition lays out index blocks") {
    const PortPartition p = contiguous_partition({2, 3, 1});
    REQUIRE(p.ports.size() == 3);
    CHECK(p.ports[0] == std::vector<std::size_t>{0, 1});
    CHECK(p.ports[1] == std::vector<std::size_t>{2, 3, 4});
    CHECK(p.ports[2] == std::vector<std::size_t>{5});
    CHECK_THROWS_AS(contiguous_partition({}), std::invalid_argument);
    CHECK_THROWS_AS(contiguous_partition({2, 0}), std::invalid_argument);
}

TEST_CASE("[hybrid] partition validation names each defect") {
    validate_partition(contiguous_partition({2, 2}), 4);
    struct Case {
        PortPartition p;
        int lr;
        const char* needle;
    };
    const Case cases[] = {
        {PortPartition{{{0, 1}, {}}}, 2, "empty"},
        {PortPartition{{{0, 1}, {1}}}, 2, "more than one port"},
        {PortPartition{{{0}, {2}}}, 3, "not assigned"},
        {PortPartition{{{0}, {5}}}, 2, "out of range"},
    };
    for (const auto& c : cases) {
        bool threw = false;
        try {
            validate_partition(c.p, c.lr);
        } catch (const std::invalid_argument& e) {
            threw = true;
            CHECK(std::string(e.what()).find(c.needle) != std::string::npos);
        }
        CHECK(threw);
    }
}

TEST_CASE("[hybrid] one port reduces to plain beamforming") {
    const SystemConfig cfg = make_config(4, 0.1, 0.001, 2, 3);
    const PortPartition part = contiguous_partition({3});
    const SlopeSet slopes{{0.0, 9.0}, {0.0, 4.0, 31.0}, "explicit"};
    Rng rng(8);
    const ScenarioDraw d = random_draw(rng, 2, 3);
    const std::vector<double> g_s = {1.0, 0.8};
    const std::vector<double> g_r = {0.9, 1.2, 1.0};
    for (int k = 0; k < 4; ++k) {
        const double a =
            mrc_packet_snr(Scheme::Abn, cfg, part, d, slopes, g_s, g_r, k);
        const double b = abn_packet_snr(cfg, d, slopes, g_s, g_r, k);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, b));
    }
    const SnrTrace ta = mrc_sum_snr(Scheme::Abn, cfg, part, d, slopes, g_s, g_r);
    const SnrTrace tb = sum_snr(Scheme::Abn, cfg, d, slopes, g_s, g_r);
    CHECK(std::abs(ta.sum - tb.sum) <= 1e-12 * std::max(1.0, tb.sum));
}

TEST_CASE("[hybrid] identical subarrays double the port sum") {
    // Two ports with identical gains, phases and slopes contribute exactly
    // twice the single-port value.
    const SystemConfig cfg = make_config(4, 0.1, 0.001, 2, 4);
    const SystemConfig half = make_config(4, 0.1, 0.001, 2, 2);
    const PortPartition part = contiguous_partition({2, 2});
    Rng rng(11);
    ScenarioDraw d = random_draw(rng, 2, 2);
    d.psi_r = {d.psi_r[0], d.psi_r[1], d.psi_r[0], d.psi_r[1]};
    const SlopeSet full{{0.0, 7.0}, {0.0, 19.0, 0.0, 19.0}, "explicit"};
    const SlopeSet sub{{0.0, 7.0}, {0.0, 19.0}, "explicit"};
    const std::vector<double> g_s = {1.1, 0.9};
    const std::vector<double> g_r = {0.8, 1.3, 0.8, 1.3};
    const std::vector<double> g_sub = {0.8, 1.3};
    ScenarioDraw dsub = d;
    dsub.psi_r = {d.psi_r[0], d.psi_r[1]};
    for (int k = 0; k < 4; ++k) {
        const double two =
            mrc_packet_snr(Scheme::Abn, cfg, part, d, full, g_s, g_r, k);
        const double one = abn_packet_snr(half, dsub, sub, g_s, g_sub, k);
        CHECK(std::abs(two - 2.0 * one) <= 1e-12 * std::max(1.0, two));
    }
}

TEST_CASE("[hybrid] port sum is additive over the partition") {
    const SystemConfig cfg = make_config(5, 0.1, 0.001, 1, 5);
    const PortPartition part = contiguous_partition({2, 3});
    Rng rng(23);
    const ScenarioDraw d = random_draw(rng, 1, 5);
    const SlopeSet slopes{{0.0}, {0.0, 3.0, 8.0, 1.0, 27.0}, "explicit"};
    const std::vector<double> g_s = {1.0};
    std::vector<double> g_r(5);
    for (auto& g : g_r) g = rng.uniform(0.4, 1.6);

    for (int k = 0; k < cfg.K; ++k) {
        const double whole =
            mrc_packet_snr(Scheme::Abn, cfg, part, d, slopes, g_s, g_r, k);
        double parts = 0.0;
        for (const auto& port : part.ports) {
            SystemConfig pc = cfg;
            pc.Lr = static_cast<int>(port.size());
            ScenarioDraw pd;
            pd.psi_s = d.psi_s;
            SlopeSet ps{{0.0}, {}, "explicit"};
            std::vector<double> pg;
            for (std::size_t idx : port) {
                pd.psi_r.push_back(d.psi_r[idx]);
                ps.rx_slopes.push_back(slopes.rx_slopes[idx]);
                pg.push_back(g_r[idx]);
            }
            parts += abn_packet_snr(pc, pd, ps, g_s, pg, k);
        }
        CHECK(std::abs(whole - parts) <= 1e-12 * std::max(1.0, whole));
    }
}

TEST_CASE("[hybrid] switching transmit side dispatches per port") {
    const SystemConfig cfg = make_config(4, 0.1, 0.001, 2, 4);
    const PortPartition part = contiguous_partition({2, 2});
    Rng rng(29);
    const ScenarioDraw d = random_draw(rng, 2, 4);
    const SlopeSet slopes{{}, {0.0, 5.0, 2.0, 9.0}, "explicit"};
    const std::vector<double> g_s = {0.7, 1.2};
    const std::vector<double> g_r = {1.0, 1.0, 0.9, 1.1};
    for (int k = 0; k < 4; ++k) {
        double want = 0.0;
        for (const auto& port : part.ports) {
            SystemConfig pc = cfg;
            pc.Lr = 2;
            ScenarioDraw pd;
            pd.psi_s = d.psi_s;
            SlopeSet ps{{}, {}, "explicit"};
            std::vector<double> pg;
            for (std::size_t idx : port) {
                pd.psi_r.push_back(d.psi_r[idx]);
                ps.rx_slopes.push_back(slopes.rx_slopes[idx]);
                pg.push_back(g_r[idx]);
            }
            want += asn_packet_snr(pc, pd, ps, g_s, pg, k);
        }
        const double got =
            mrc_packet_snr(Scheme::Asn, cfg, part, d, slopes, g_s, g_r, k);
        CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, want));
    }
}

TEST_CASE("[hybrid] space time transmit side is rejected") {
    const SystemConfig cfg = make_config(4, 0.1, 0.001, 2, 2);
    const PortPartition part = contiguous_partition({1, 1});
    const SlopeSet slopes{{}, {0.0, 1.0}, "explicit"};
    const ScenarioDraw d{0.0, 0.0, {0.0, 0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(mrc_packet_snr(Scheme::Alamouti, cfg, part, d, slopes,
                                   {1.0, 1.0}, {1.0, 1.0}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(mrc_sum_snr(Scheme::Alamouti, cfg, part, d, slopes,
                                {1.0, 1.0}, {1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("[hybrid] cloned optimal slopes reach the port sum ceiling") {
    // Two ports of two elements each, Ls = 2, K = 8: per-port slopes reuse
    // the dense receive assignment while the transmit stride covers the
    // largest port, so every port hits its own ceiling simultaneously.
    const int K = 8;
    const double T = 0.1;
    const SystemConfig cfg = make_config(K, T, 0.001, 2, 4);
    const PortPartition part = contiguous_partition({2, 2});
    const double base = kTwoPi / (K * T);
    SlopeSet slopes{{0.0, 2.0 * base}, {0.0, base, 0.0, base}, "explicit"};
    Rng rng(41);
    const std::vector<double> g_s = {1.0, 0.9};
    std::vector<double> g_r = {1.1, 0.8, 1.0, 1.2};
    const double ceiling = K * port_g_bar_sum(part, g_s, g_r);
    for (int rep = 0; rep < 10; ++rep) {
        const ScenarioDraw d = random_draw(rng, 2, 4);
        const SnrTrace tr =
            mrc_sum_snr(Scheme::Abn, cfg, part, d, slopes, g_s, g_r);
        CHECK(std::abs(tr.sum - ceiling) <= 1e-9 * std::max(1.0, ceiling));
    }
}

TEST_CASE("[hybrid] port mean gain splits by subarray") {
    const PortPartition part = contiguous_partition({1, 2});
    const std::vector<double> g_s = {2.0};
    const std::vector<double> g_r = {1.0, 2.0, 3.0};
    // Port 0: (1/1)*4. Port 1: ((4+9)/2)*4.
    const double want = 4.0 + 26.0;
    CHECK(std::abs(port_g_bar_sum(part, g_s, g_r) - want) <= 1e-12);
    CHECK_THROWS_AS(port_g_bar_sum(contiguous_partition({2}), g_s, g_r),
                    std::invalid_argument);
}

TEST_CASE("[hybrid] receive side size mismatches are rejected") {
    const SystemConfig cfg = make_config(2, 0.1, 0.001, 1, 3);
    const PortPartition part = contiguous_partition({1, 2});
    const SlopeSet slopes{{0.0}, {0.0, 1.0}, "explicit"};
    const ScenarioDraw d{0.0, 0.0, {0.0}, {0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(mrc_packet_snr(Scheme::Abn, cfg, part, d, slopes, {1.0},
                                   {1.0, 1.0, 1.0}, 0),
                    std::invalid_argument);
}
