#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vbeam/schemes.hpp"

namespace vbeam {

// Reference evaluator: sum_{k=0}^{K-1} cos(y - 2kx), term by term.
double f_direct(double x, double y, int K);

// Closed form of the same sum:
//   K*cos(y)                                   if x is a multiple of pi
//   sin(Kx)/sin(x) * cos(y - (K-1)x)           otherwise
// pi-periodic in x. Values of x within 1e-9 of a multiple of pi take the
// first branch.
double f_closed(double x, double y, int K);

// Membership in the zero set {q*pi/K : q integer, q not a multiple of K},
// decided by nearest-lattice-point distance on both lattices.
bool in_xstar(double x, int K, double tol = 1e-9);

enum class ConstructVariant { Primary, Reciprocal };

// Optimal slope assignment for two-sided beamforming. Primary packs the
// receive side densely: alpha_r_l = l*2pi/(K*T), alpha_s_m = m*Lr*2pi/(K*T).
// Reciprocal swaps the roles (tx dense, rx strided by Ls). Throws
// std::domain_error when Lr*Ls > K.
SlopeSet abn_construct(int Lr, int Ls, int K, double T,
                       ConstructVariant variant = ConstructVariant::Primary);

// Shared-environment variant: strides use the maximum array sizes so any
// user with Lr <= Lrmax, Ls <= Lsmax stays optimal. Throws std::domain_error
// when Lrmax*Lsmax > K.
SlopeSet abn_construct_multiuser(int Lr, int Ls, int Lrmax, int Lsmax, int K,
                                 double T,
                                 ConstructVariant variant =
                                     ConstructVariant::Primary);

// Receive-side slopes for transmit antenna switching: alpha_r_l =
// l*2pi/(K*T), tx_slopes empty. Requires K divisible by Ls and
// Lr <= K/Ls; throws std::domain_error otherwise.
SlopeSet asn_construct(int Lr, int Ls, int K, double T);

// Which optimality condition a violating pair breaks: receive pair
// difference, transmit pair difference, or a combined receive/transmit
// difference (sum or difference of the two lattice coordinates).
enum class ConditionClass { RxPair, TxPair, CrossPair };

struct SlopeViolation {
    ConditionClass cls;
    std::size_t i0 = 0, i1 = 0;  // rx pair (RxPair/CrossPair) or tx pair (TxPair)
    std::size_t j0 = 0, j1 = 0;  // tx pair for CrossPair
    int sign = 0;                // +1/-1 for CrossPair
    double value = 0.0;          // offending lattice coordinate, radians
};

std::string describe(const SlopeViolation& v);

struct CheckResult {
    bool ok = true;
    std::vector<SlopeViolation> violations;
};

// Verifies every pairwise condition for burst-sum optimality of two-sided
// beamforming: for all pairs, dalpha_r*T/2, dalpha_s*T/2 and
// (dalpha_r +/- dalpha_s)*T/2 must lie in the zero set for K.
CheckResult check_abn(const SlopeSet& slopes, int K, double T,
                      double tol = 1e-9);

// Verifies the switching-scheme condition: for all receive pairs,
// Ls*dalpha_r*T/2 lies in the zero set for K/Ls. Requires K divisible by
// Ls (std::invalid_argument otherwise).
CheckResult check_asn(const std::vector<double>& rx_slopes, int Ls, int K,
                      double T, double tol = 1e-9);

}  // namespace vbeam
