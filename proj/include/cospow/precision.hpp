#pragma once

#include <cstdint>

#include "cospow/real.hpp"

namespace cospow {

// Binary precision assigned to one evaluation. `bits` comes from the
// budget formula; `guard_bits` is extra headroom actually used on top.
struct PrecisionBudget {
    long bits = 64;
    long guard_bits = 0;

    long total() const { return bits + guard_bits; }
};

// Hard cap on any single mpfr precision (default 2^20 bits). The CLI maps
// the COSPOW_MAX_PREC_BITS environment variable onto this.
long max_precision_bits();
void set_max_precision_bits(long bits);

// Throws ResourceLimitError when `bits` exceeds the cap, DomainError when
// it is below the mpfr minimum.
void check_precision(long bits);

// pi rounded to `bits` binary digits (error < 2^(1-bits)).
Real pi_to_precision(long bits);

// bits = max(64, 64 + ceil((gamma + 2) * log2(n + 2))). The residual of n
// can be as small as ~1/n and powering by n^gamma multiplies relative
// error by n^gamma, so both arguments widen the budget.
PrecisionBudget required_precision(long long n, double gamma);

// Integer n together with the count q of its nearest multiple of pi and
// the signed residual r = n - pi*q, |r| <= pi/2.
struct Residual {
    long long n = 0;
    long long q = 0;
    Real r{64};
    PrecisionBudget prec;
};

// q = [n/pi] (nearest integer, ties to even -- ties cannot occur for
// integer n since pi is irrational). Computed at required_precision(n, 2)
// unless an explicit budget is supplied.
Residual nearest_multiple(long long n);
Residual nearest_multiple(long long n, const PrecisionBudget& budget);

// One evaluated sequence term |cos n|^(n^gamma).
struct SeqValue {
    long long n = 0;
    double gamma = 0.0;
    double value = 0.0;
    bool underflow = false;  // true value is positive but below 2^-1074
    PrecisionBudget prec_used;
};

SeqValue seq_value(long long n, double gamma);
// Evaluation under an explicit budget (used by the doubled-precision
// self-check and by --prec-bits).
SeqValue seq_value(long long n, double gamma, const PrecisionBudget& budget);

}  // namespace cospow
