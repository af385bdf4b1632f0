#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "cospow/real.hpp"

namespace cospow {

// exp(-pi^2/2), the analytic floor on limsup |cos n|^(n^2), correct to
// `bits` binary digits. Requires bits >= 24.
Real exp_pi_sq_over_2_bound(long bits);

// Exact central binomial moment sum_{i=0}^{m} C(m,i) (2i-m)^order.
// order must be even; m <= 512 (resource bound).
mpz_class central_moment_bruteforce(long m, long order);

// Closed forms printed for the first three even orders:
//   order 2: m * 2^m
//   order 4: m(3m-2) * 2^m
//   order 6: m(15m^2 - 30m + 16) * 2^m
mpz_class moment_closed_form(long m, long order);

// (2k-1)!! -- magnitude of the series coefficient over (2k)!.
mpz_class double_factorial_odd(long k);

enum class TermSign { positive, negative };

struct SeriesTruncation {
    long max_order = 2;
    double partial_sum = 0.0;
    TermSign last_term_sign = TermSign::negative;
    // truncating at a negative term keeps the partial sum a lower bound
    bool valid_lower_bound = false;
};

// Partial sum 1 + sum_{k=1}^{max_order/2} (-1)^k (2k-1)!!/(2k)!, evaluated
// in exact rationals. max_order even, in [2, 16].
SeriesTruncation truncated_limsup_series(long max_order);

// (1 - 1/x)^(c * x^(1+growth)) at each x; every output is bounded above by
// exp(-c * x^growth). Requires every x > 1.
std::vector<double> decay_profile(double c, double growth, std::span<const double> xs);

}  // namespace cospow
