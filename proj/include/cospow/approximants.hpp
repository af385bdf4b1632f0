#pragma once

#include <optional>
#include <vector>

namespace cospow {

enum class ApproxKind { convergent, semiconvergent };

// A rational approximant p/q of pi with its measured quality.
struct RationalApprox {
    long long p = 0;
    long long q = 1;
    ApproxKind kind = ApproxKind::convergent;
    double err = 0.0;       // |pi - p/q|
    double residual = 0.0;  // |p - q*pi| = q * err
    std::optional<double> mu_eff;  // -ln(err)/ln(q), defined for q >= 2
};

// First `max_terms` partial quotients of pi: [3; 7, 15, 1, 292, ...].
// Quotients are certified by recomputation at doubled precision.
std::vector<long long> cf_expansion(int max_terms);

// Continued-fraction convergents with q <= max_q, ascending q. With the
// flag set, additionally every semiconvergent
// (p_{k-1} + t*p_k)/(q_{k-1} + t*q_k), 1 <= t < a_{k+1}, that strictly
// improves the best error |pi - p/q| seen so far (the best-approximation-
// of-the-first-kind filter; this is what admits 52163/16604).
std::vector<RationalApprox> approximations(long long max_q, bool include_semiconvergents);

// Effective exponent -ln(err)/ln(q). Requires q >= 2 and err > 0.
double mu_eff(const RationalApprox& approx);

// Numerators of approximations(max_q, true), deduplicated, ascending.
// Candidate common differences for persistent progressions.
std::vector<long long> progression_candidates(long long max_q);

}  // namespace cospow
