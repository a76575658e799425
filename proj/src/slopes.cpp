#include "vbeam/slopes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vbeam {

namespace {

constexpr double kBranchGuard = 1e-9;

// First correction term of pi beyond its double representation.
constexpr double kPiTail = 1.2246467991473532e-16;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

double lattice_distance(double x, double step) {
    return std::abs(x - std::round(x / step) * step);
}

void check_positive(int K, double T) {
    if (K < 1) fail("K must be >= 1, got " + std::to_string(K));
    if (!(T > 0.0)) fail("T must be > 0");
}

}  // namespace

double f_direct(double x, double y, int K) {
    if (K < 1) fail("K must be >= 1, got " + std::to_string(K));
    double acc = 0.0;
    for (int k = 0; k < K; ++k) acc += std::cos(y - 2.0 * k * x);
    return acc;
}

double f_closed(double x, double y, int K) {
    if (K < 1) fail("K must be >= 1, got " + std::to_string(K));
    // Shift x by its nearest multiple of pi: with x = n*pi + d the sign
    // flips of sin(K*x)/sin(x) and cos(y - (K-1)*x) cancel, leaving
    //   sin(K*d)/sin(d) * cos(y - (K-1)*d).
    // Evaluating at d keeps the rounding of the K*x product from swamping
    // the ratio when sin(x) is small.
    const double n = std::nearbyint(x / std::numbers::pi);
    const double d = std::fma(-n, std::numbers::pi, x) - n * kPiTail;
    if (std::abs(d) < kBranchGuard) return K * std::cos(y);
    return std::sin(K * d) / std::sin(d) * std::cos(y - (K - 1) * d);
}

bool in_xstar(double x, int K, double tol) {
    if (K < 1) fail("K must be >= 1, got " + std::to_string(K));
    if (!(tol > 0.0)) fail("tol must be > 0");
    const double fine = std::numbers::pi / K;
    if (lattice_distance(x, fine) >= tol) return false;
    return lattice_distance(x, std::numbers::pi) >= tol;
}

SlopeSet abn_construct(int Lr, int Ls, int K, double T,
                       ConstructVariant variant) {
    return abn_construct_multiuser(Lr, Ls, Lr, Ls, K, T, variant);
}

SlopeSet abn_construct_multiuser(int Lr, int Ls, int Lrmax, int Lsmax, int K,
                                 double T, ConstructVariant variant) {
    check_positive(K, T);
    if (Lr < 1 || Ls < 1 || Lrmax < Lr || Lsmax < Ls)
        fail("array sizes must satisfy 1 <= Lr <= Lrmax, 1 <= Ls <= Lsmax");
    if (static_cast<long long>(Lrmax) * Lsmax > K)
        throw std::domain_error(
            "infeasible: Lrmax*Lsmax = " + std::to_string(Lrmax * Lsmax) +
            " exceeds K = " + std::to_string(K));
    const double unit = 2.0 * std::numbers::pi / (K * T);
    const double rx_stride =
        variant == ConstructVariant::Primary ? 1.0 : static_cast<double>(Lsmax);
    const double tx_stride =
        variant == ConstructVariant::Primary ? static_cast<double>(Lrmax) : 1.0;
    SlopeSet out;
    out.rx_slopes.resize(static_cast<std::size_t>(Lr));
    out.tx_slopes.resize(static_cast<std::size_t>(Ls));
    for (int l = 0; l < Lr; ++l) out.rx_slopes[l] = l * rx_stride * unit;
    for (int m = 0; m < Ls; ++m) out.tx_slopes[m] = m * tx_stride * unit;
    const bool shared = Lrmax != Lr || Lsmax != Ls;
    out.provenance = std::string("construct:") + (shared ? "multiuser:" : "") +
                     (variant == ConstructVariant::Primary ? "primary"
                                                           : "reciprocal");
    return out;
}

SlopeSet asn_construct(int Lr, int Ls, int K, double T) {
    check_positive(K, T);
    if (Lr < 1 || Ls < 1) fail("array sizes must be >= 1");
    if (K % Ls != 0)
        throw std::domain_error("infeasible: K = " + std::to_string(K) +
                                " is not divisible by Ls = " +
                                std::to_string(Ls));
    if (Lr > K / Ls)
        throw std::domain_error("infeasible: Lr = " + std::to_string(Lr) +
                                " exceeds K/Ls = " + std::to_string(K / Ls));
    const double unit = 2.0 * std::numbers::pi / (K * T);
    SlopeSet out;
    out.rx_slopes.resize(static_cast<std::size_t>(Lr));
    for (int l = 0; l < Lr; ++l) out.rx_slopes[l] = l * unit;
    out.provenance = "construct:switching";
    return out;
}

std::string describe(const SlopeViolation& v) {
    switch (v.cls) {
        case ConditionClass::RxPair:
            return "rx-pair (" + std::to_string(v.i0) + "," +
                   std::to_string(v.i1) + "): dalpha*T/2 = " +
                   std::to_string(v.value) + " rad outside zero set";
        case ConditionClass::TxPair:
            return "tx-pair (" + std::to_string(v.i0) + "," +
                   std::to_string(v.i1) + "): dalpha*T/2 = " +
                   std::to_string(v.value) + " rad outside zero set";
        case ConditionClass::CrossPair:
            return "cross-pair rx(" + std::to_string(v.i0) + "," +
                   std::to_string(v.i1) + ") tx(" + std::to_string(v.j0) +
                   "," + std::to_string(v.j1) + ") sign " +
                   (v.sign > 0 ? "+" : "-") + ": combined dalpha*T/2 = " +
                   std::to_string(v.value) + " rad outside zero set";
    }
    return "?";
}

CheckResult check_abn(const SlopeSet& slopes, int K, double T, double tol) {
    check_positive(K, T);
    const auto& ar = slopes.rx_slopes;
    const auto& as = slopes.tx_slopes;
    const double half_t = 0.5 * T;
    CheckResult res;
    for (std::size_t l = 0; l < ar.size(); ++l) {
        for (std::size_t i = l + 1; i < ar.size(); ++i) {
            const double x = (ar[l] - ar[i]) * half_t;
            if (!in_xstar(x, K, tol))
                res.violations.push_back(
                    {ConditionClass::RxPair, l, i, 0, 0, 0, x});
        }
    }
    for (std::size_t m = 0; m < as.size(); ++m) {
        for (std::size_t j = m + 1; j < as.size(); ++j) {
            const double z = (as[m] - as[j]) * half_t;
            if (!in_xstar(z, K, tol))
                res.violations.push_back(
                    {ConditionClass::TxPair, m, j, 0, 0, 0, z});
        }
    }
    for (std::size_t l = 0; l < ar.size(); ++l) {
        for (std::size_t i = l + 1; i < ar.size(); ++i) {
            const double x = (ar[l] - ar[i]) * half_t;
            for (std::size_t m = 0; m < as.size(); ++m) {
                for (std::size_t j = m + 1; j < as.size(); ++j) {
                    const double z = (as[m] - as[j]) * half_t;
                    for (int sign : {+1, -1}) {
                        const double c = x + sign * z;
                        if (!in_xstar(c, K, tol))
                            res.violations.push_back({ConditionClass::CrossPair,
                                                      l, i, m, j, sign, c});
                    }
                }
            }
        }
    }
    res.ok = res.violations.empty();
    return res;
}

CheckResult check_asn(const std::vector<double>& rx_slopes, int Ls, int K,
                      double T, double tol) {
    check_positive(K, T);
    if (Ls < 1) fail("Ls must be >= 1, got " + std::to_string(Ls));
    if (K % Ls != 0)
        fail("K = " + std::to_string(K) + " must be divisible by Ls = " +
             std::to_string(Ls));
    const int kbar = K / Ls;
    const double half_t = 0.5 * T;
    CheckResult res;
    for (std::size_t l = 0; l < rx_slopes.size(); ++l) {
        for (std::size_t i = l + 1; i < rx_slopes.size(); ++i) {
            const double x = Ls * (rx_slopes[l] - rx_slopes[i]) * half_t;
            if (!in_xstar(x, kbar, tol))
                res.violations.push_back(
                    {ConditionClass::RxPair, l, i, 0, 0, 0, x});
        }
    }
    res.ok = res.violations.empty();
    return res;
}

}  // namespace vbeam
