#include "vbeam/oracle.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vbeam/rng.hpp"

namespace vbeam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

void validate_sizes(Scheme scheme, const SystemConfig& cfg,
                    const SlopeSet& slopes, const std::vector<double>& g_s,
                    const std::vector<double>& g_r) {
    if (g_s.size() != static_cast<std::size_t>(cfg.Ls) ||
        g_r.size() != static_cast<std::size_t>(cfg.Lr))
        fail("gains must have configured sizes Ls and Lr");
    if (slopes.rx_slopes.size() != static_cast<std::size_t>(cfg.Lr))
        fail("rx_slopes size does not match configured Lr");
    if (scheme == Scheme::Abn &&
        slopes.tx_slopes.size() != static_cast<std::size_t>(cfg.Ls))
        fail("tx_slopes size does not match configured Ls");
    if (scheme == Scheme::Alamouti && cfg.Ls != 2)
        fail("space-time scheme requires Ls == 2");
}

void guard_evaluations(std::uint64_t points_per_dim, int dims,
                       std::uint64_t outer) {
    std::uint64_t total = outer;
    for (int i = 0; i < dims; ++i) {
        if (points_per_dim != 0 && total > kMaxGridEvaluations / points_per_dim)
            throw std::length_error(
                "grid exceeds the evaluation ceiling of 1e8 points");
        total *= points_per_dim;
    }
    if (total > kMaxGridEvaluations)
        throw std::length_error(
            "grid exceeds the evaluation ceiling of 1e8 points");
}

// Burst sum as a function of psi lattice indices, with per-(element,packet)
// phasors precomputed once per slope set.
class BurstEvaluator {
public:
    BurstEvaluator(Scheme tx_scheme, const SystemConfig& cfg,
                   const std::vector<std::vector<std::size_t>>& ports,
                   const SlopeSet& slopes, const std::vector<double>& g_s,
                   const std::vector<double>& g_r, int psi_points)
        : scheme_(tx_scheme),
          k_count_(cfg.K),
          inv_ls_(1.0 / cfg.Ls),
          ports_(ports) {
        e_.resize(static_cast<std::size_t>(psi_points));
        for (int i = 0; i < psi_points; ++i)
            e_[static_cast<std::size_t>(i)] =
                std::polar(1.0, -kTwoPi * i / psi_points);

        a_r_.resize(g_r.size());
        for (std::size_t l = 0; l < g_r.size(); ++l) {
            a_r_[l].resize(static_cast<std::size_t>(cfg.K));
            for (int k = 0; k < cfg.K; ++k)
                a_r_[l][static_cast<std::size_t>(k)] =
                    g_r[l] * std::polar(1.0, slopes.rx_slopes[l] * k * cfg.T);
        }
        if (scheme_ == Scheme::Abn) {
            a_s_.resize(g_s.size());
            for (std::size_t m = 0; m < g_s.size(); ++m) {
                a_s_[m].resize(static_cast<std::size_t>(cfg.K));
                for (int k = 0; k < cfg.K; ++k)
                    a_s_[m][static_cast<std::size_t>(k)] =
                        g_s[m] *
                        std::polar(1.0, slopes.tx_slopes[m] * k * cfg.T);
            }
        } else {
            tx_factor_.resize(static_cast<std::size_t>(cfg.K));
            for (int k = 0; k < cfg.K; ++k) {
                double v = 0.0;
                if (scheme_ == Scheme::Asn) {
                    const double g = g_s[static_cast<std::size_t>(k % cfg.Ls)];
                    v = g * g;
                } else {
                    for (double g : g_s) v += g * g;
                    v *= 0.5;
                }
                tx_factor_[static_cast<std::size_t>(k)] = v;
            }
        }
        inv_lp_.resize(ports_.size());
        for (std::size_t p = 0; p < ports_.size(); ++p)
            inv_lp_[p] = 1.0 / static_cast<double>(ports_[p].size());
    }

    double eval(const std::vector<int>& idx_r,
                const std::vector<int>& idx_s) const {
        double total = 0.0;
        for (int k = 0; k < k_count_; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            double tx;
            if (scheme_ == Scheme::Abn) {
                std::complex<double> s = 0.0;
                for (std::size_t m = 0; m < a_s_.size(); ++m)
                    s += a_s_[m][ku] * e_[static_cast<std::size_t>(idx_s[m])];
                tx = std::norm(s) * inv_ls_;
            } else {
                tx = tx_factor_[ku];
            }
            double rx = 0.0;
            for (std::size_t p = 0; p < ports_.size(); ++p) {
                std::complex<double> s = 0.0;
                for (std::size_t l : ports_[p])
                    s += a_r_[l][ku] * e_[static_cast<std::size_t>(idx_r[l])];
                rx += std::norm(s) * inv_lp_[p];
            }
            total += tx * rx;
        }
        return total;
    }

private:
    Scheme scheme_;
    int k_count_;
    double inv_ls_;
    std::vector<std::vector<std::size_t>> ports_;
    std::vector<std::complex<double>> e_;
    std::vector<std::vector<std::complex<double>>> a_r_, a_s_;
    std::vector<double> tx_factor_;
    std::vector<double> inv_lp_;
};

InfResult run_inf(const BurstEvaluator& ev, int lr, int ls, bool tx_free,
                  int psi_points) {
    std::vector<int> idx_r(static_cast<std::size_t>(lr), 0);
    std::vector<int> idx_s(static_cast<std::size_t>(ls), 0);
    std::vector<int*> slot;
    for (int l = 1; l < lr; ++l) slot.push_back(&idx_r[static_cast<std::size_t>(l)]);
    if (tx_free)
        for (int m = 1; m < ls; ++m)
            slot.push_back(&idx_s[static_cast<std::size_t>(m)]);

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_r = idx_r, best_s = idx_s;
    for (;;) {
        const double v = ev.eval(idx_r, idx_s);
        if (v < best) {
            best = v;
            best_r = idx_r;
            best_s = idx_s;
        }
        std::size_t j = slot.size();
        while (j > 0) {
            if (++(*slot[j - 1]) < psi_points) break;
            *slot[j - 1] = 0;
            --j;
        }
        if (j == 0) break;
    }

    InfResult out;
    out.value = best;
    out.psi_r.resize(static_cast<std::size_t>(lr));
    out.psi_s.resize(static_cast<std::size_t>(ls));
    for (int l = 0; l < lr; ++l)
        out.psi_r[static_cast<std::size_t>(l)] =
            kTwoPi * best_r[static_cast<std::size_t>(l)] / psi_points;
    for (int m = 0; m < ls; ++m)
        out.psi_s[static_cast<std::size_t>(m)] =
            kTwoPi * best_s[static_cast<std::size_t>(m)] / psi_points;
    return out;
}

std::vector<std::vector<std::size_t>> single_port(int lr) {
    std::vector<std::size_t> all(static_cast<std::size_t>(lr));
    for (int l = 0; l < lr; ++l) all[static_cast<std::size_t>(l)] = l;
    return {all};
}

int free_dims(Scheme scheme, int lr, int ls) {
    return (lr - 1) + (scheme == Scheme::Abn ? ls - 1 : 0);
}

// Shared outer search: for each candidate slope assignment drawn from
// `values`, runs the inner phase infimum and keeps the largest.
struct OuterBest {
    double value = -std::numeric_limits<double>::infinity();
    SlopeSet slopes;
    InfResult inf;
};

OuterBest outer_search(Scheme scheme, const SystemConfig& cfg,
                       const std::vector<double>& g_s,
                       const std::vector<double>& g_r,
                       const std::vector<double>& values, int psi_points,
                       const std::string& provenance) {
    const int dims = free_dims(scheme, cfg.Lr, cfg.Ls);
    guard_evaluations(static_cast<std::uint64_t>(psi_points), dims, 1);
    std::uint64_t inner = 1;
    for (int i = 0; i < dims; ++i)
        inner *= static_cast<std::uint64_t>(psi_points);
    guard_evaluations(static_cast<std::uint64_t>(values.size()), dims, inner);

    SlopeSet cand;
    cand.rx_slopes.assign(static_cast<std::size_t>(cfg.Lr), 0.0);
    cand.tx_slopes.assign(
        scheme == Scheme::Abn ? static_cast<std::size_t>(cfg.Ls) : 0, 0.0);
    cand.provenance = provenance;

    std::vector<double*> slot;
    for (int l = 1; l < cfg.Lr; ++l)
        slot.push_back(&cand.rx_slopes[static_cast<std::size_t>(l)]);
    if (scheme == Scheme::Abn)
        for (int m = 1; m < cfg.Ls; ++m)
            slot.push_back(&cand.tx_slopes[static_cast<std::size_t>(m)]);

    std::vector<std::size_t> counter(slot.size(), 0);
    for (auto& s : slot) *s = values.empty() ? 0.0 : values[0];

    const auto ports = single_port(cfg.Lr);
    OuterBest best;
    for (;;) {
        BurstEvaluator ev(scheme, cfg, ports, cand, g_s, g_r, psi_points);
        InfResult inf = run_inf(ev, cfg.Lr, cfg.Ls, scheme == Scheme::Abn,
                                psi_points);
        if (inf.value > best.value) {
            best.value = inf.value;
            best.slopes = cand;
            best.inf = inf;
        }
        if (slot.empty()) break;
        std::size_t j = slot.size();
        while (j > 0) {
            if (++counter[j - 1] < values.size()) {
                *slot[j - 1] = values[counter[j - 1]];
                break;
            }
            counter[j - 1] = 0;
            *slot[j - 1] = values[0];
            --j;
        }
        if (j == 0) break;
    }
    return best;
}

}  // namespace

void validate_grid(const GridSpec& grid) {
    if (grid.psi_points < 2) fail("grid psi_points: must be >= 2");
    if (grid.slope_points < 2) fail("grid slope_points: must be >= 2");
    if (grid.angle_points < 2) fail("grid angle_points: must be >= 2");
}

InfResult inf_over_phases(Scheme scheme, const SystemConfig& cfg,
                          const SlopeSet& slopes,
                          const std::vector<double>& g_s,
                          const std::vector<double>& g_r, int psi_points) {
    if (psi_points < 2) fail("grid psi_points: must be >= 2");
    validate_sizes(scheme, cfg, slopes, g_s, g_r);
    guard_evaluations(static_cast<std::uint64_t>(psi_points),
                      free_dims(scheme, cfg.Lr, cfg.Ls), 1);
    BurstEvaluator ev(scheme, cfg, single_port(cfg.Lr), slopes, g_s, g_r,
                      psi_points);
    return run_inf(ev, cfg.Lr, cfg.Ls, scheme == Scheme::Abn, psi_points);
}

InfResult inf_over_phases_mrc(Scheme tx_scheme, const SystemConfig& cfg,
                              const PortPartition& partition,
                              const SlopeSet& slopes,
                              const std::vector<double>& g_s,
                              const std::vector<double>& g_r,
                              int psi_points) {
    if (psi_points < 2) fail("grid psi_points: must be >= 2");
    if (tx_scheme == Scheme::Alamouti)
        fail("port combining supports beamforming or switching transmit "
             "schemes");
    validate_sizes(tx_scheme, cfg, slopes, g_s, g_r);
    validate_partition(partition, cfg.Lr);
    guard_evaluations(static_cast<std::uint64_t>(psi_points),
                      free_dims(tx_scheme, cfg.Lr, cfg.Ls), 1);
    BurstEvaluator ev(tx_scheme, cfg, partition.ports, slopes, g_s, g_r,
                      psi_points);
    return run_inf(ev, cfg.Lr, cfg.Ls, tx_scheme == Scheme::Abn, psi_points);
}

SupInfResult sup_inf_search(Scheme scheme, const SystemConfig& cfg,
                            const std::vector<double>& g_s,
                            const std::vector<double>& g_r,
                            const GridSpec& grid) {
    validate_grid(grid);
    SlopeSet probe;
    probe.rx_slopes.assign(static_cast<std::size_t>(cfg.Lr), 0.0);
    if (scheme == Scheme::Abn)
        probe.tx_slopes.assign(static_cast<std::size_t>(cfg.Ls), 0.0);
    validate_sizes(scheme, cfg, probe, g_s, g_r);

    double lo = grid.slope_range[0];
    double hi = grid.slope_range[1];
    if (hi < lo) {
        lo = 0.0;
        hi = kTwoPi / cfg.T;
    }
    std::vector<double> values(static_cast<std::size_t>(grid.slope_points));
    for (int i = 0; i < grid.slope_points; ++i)
        values[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * i / (grid.slope_points - 1);

    OuterBest best = outer_search(scheme, cfg, g_s, g_r, values,
                                  grid.psi_points, "grid-search");
    SupInfResult out;
    out.value = best.value;
    out.slopes = best.slopes;
    out.inf = best.inf;
    return out;
}

NecessityResult necessity_search(Scheme scheme, const SystemConfig& cfg,
                                 const std::vector<double>& g_s,
                                 const std::vector<double>& g_r,
                                 int refinement, int psi_points) {
    if (refinement < 1) fail("refinement must be >= 1");
    if (psi_points < 2) fail("grid psi_points: must be >= 2");
    const int n = refinement * cfg.K;
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
        values[static_cast<std::size_t>(q)] =
            2.0 * (q * std::numbers::pi / n) / cfg.T;

    OuterBest best =
        outer_search(scheme, cfg, g_s, g_r, values, psi_points, "x-lattice");
    NecessityResult out;
    out.bound = cfg.K * g_bar(g_s, g_r);
    out.best_inf = best.value;
    out.margin_rel = (out.bound - out.best_inf) / out.bound;
    out.best = best.slopes;
    return out;
}

WorstAngles worst_case_angles(int K,
                              const std::vector<AntennaPattern>& tx_patterns,
                              const std::vector<AntennaPattern>& rx_patterns,
                              int angle_points) {
    if (K < 1) fail("K must be >= 1");
    if (angle_points < 2) fail("grid angle_points: must be >= 2");
    if (tx_patterns.empty() || rx_patterns.empty())
        fail("pattern lists must be non-empty");

    auto side_min = [angle_points](const std::vector<AntennaPattern>& pats) {
        double best = std::numeric_limits<double>::infinity();
        double best_phi = 0.0;
        for (int i = 0; i < angle_points; ++i) {
            const double phi = kTwoPi * i / angle_points;
            double acc = 0.0;
            for (const auto& p : pats) acc += std::norm(pattern_value(p, phi));
            acc /= static_cast<double>(pats.size());
            if (acc < best) {
                best = acc;
                best_phi = phi;
            }
        }
        return std::pair<double, double>(best_phi, best);
    };

    const auto [phi_r, min_r] = side_min(rx_patterns);
    const auto [phi_s, min_s] = side_min(tx_patterns);
    return WorstAngles{phi_r, phi_s, K * min_r * min_s};
}

AverageJ average_J(Scheme scheme, const SystemConfig& cfg,
                   const SlopeSet& slopes, const std::vector<double>& g_s,
                   const std::vector<double>& g_r, std::size_t samples,
                   std::uint64_t seed) {
    if (samples < 1000) fail("samples must be >= 1000");
    validate_sizes(scheme, cfg, slopes, g_s, g_r);

    const double baseline = cfg.K * g_bar(g_s, g_r);
    Rng rng(seed);
    ScenarioDraw draw;
    draw.psi_s.resize(g_s.size());
    draw.psi_r.resize(g_r.size());

    double mean = 0.0, m2 = 0.0, max_abs = 0.0;
    for (std::size_t n = 0; n < samples; ++n) {
        for (auto& v : draw.psi_r) v = rng.uniform(0.0, kTwoPi);
        for (auto& v : draw.psi_s) v = rng.uniform(0.0, kTwoPi);
        const double j =
            sum_snr(scheme, cfg, draw, slopes, g_s, g_r).sum - baseline;
        max_abs = std::max(max_abs, std::abs(j));
        const double delta = j - mean;
        mean += delta / static_cast<double>(n + 1);
        m2 += delta * (j - mean);
    }

    AverageJ out;
    out.mean = mean;
    out.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) /
                              static_cast<double>(samples));
    out.max_abs = max_abs;
    out.samples = samples;
    return out;
}

MrcBoundResult mrc_bound_check(Scheme tx_scheme, const SystemConfig& cfg,
                               const PortPartition& partition,
                               const SlopeSet& slopes,
                               const std::vector<double>& g_s,
                               const std::vector<double>& g_r, int psi_points,
                               double rel_tol) {
    MrcBoundResult out;
    out.bound = cfg.K * port_g_bar_sum(partition, g_s, g_r);
    out.inf = inf_over_phases_mrc(tx_scheme, cfg, partition, slopes, g_s, g_r,
                                  psi_points)
                  .value;
    out.ok = std::abs(out.inf - out.bound) <= rel_tol * out.bound;
    return out;
}

}  // namespace vbeam
