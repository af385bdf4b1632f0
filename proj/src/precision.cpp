#include "cospow/precision.hpp"

#include <atomic>
#include <cfloat>
#include <cmath>

#include "cospow/errors.hpp"

namespace cospow {

namespace {
std::atomic<long> g_max_prec_bits{1L << 20};
}

long max_precision_bits() { return g_max_prec_bits.load(std::memory_order_relaxed); }

void set_max_precision_bits(long bits) {
    if (bits < 64) throw DomainError("precision cap must be at least 64 bits");
    g_max_prec_bits.store(bits, std::memory_order_relaxed);
}

void check_precision(long bits) {
    if (bits < 2) throw DomainError("precision must be at least 2 bits");
    if (bits > max_precision_bits())
        throw ResourceLimitError("requested precision " + std::to_string(bits) +
                                 " bits exceeds cap of " + std::to_string(max_precision_bits()));
}

Real pi_to_precision(long bits) {
    check_precision(bits);
    return Real::pi(bits);
}

PrecisionBudget required_precision(long long n, double gamma) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be >= 0");
    double extra = (gamma + 2.0) * std::log2(static_cast<double>(n) + 2.0);
    long bits = 64 + static_cast<long>(std::ceil(extra));
    if (bits < 64) bits = 64;
    return PrecisionBudget{bits, 32};
}

Residual nearest_multiple(long long n) { return nearest_multiple(n, required_precision(std::max(n, 1LL), 2.0)); }

Residual nearest_multiple(long long n, const PrecisionBudget& budget) {
    if (n < 0) throw DomainError("n must be >= 0");
    long prec = budget.total();
    check_precision(prec);
    if (n == 0) return Residual{0, 0, Real(0LL, prec), budget};
    Real pi = Real::pi(prec);
    Real nn(n, prec);
    long long q = (nn / pi).round_ll();
    Real r = nn - pi * Real(q, prec);
    return Residual{n, q, r, budget};
}

SeqValue seq_value(long long n, double gamma) { return seq_value(n, gamma, required_precision(n, gamma)); }

SeqValue seq_value(long long n, double gamma, const PrecisionBudget& budget) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be >= 0");
    long prec = budget.total();
    check_precision(prec);
    Residual res = nearest_multiple(n, budget);
    Real c = abs(cos(res.r));
    Real e = pow(Real(n, prec), Real(gamma, prec));
    Real v = pow(c, e);
    SeqValue out;
    out.n = n;
    out.gamma = gamma;
    out.prec_used = budget;
    if (v.sign() > 0 && cmp_d(v, DBL_TRUE_MIN) < 0) {
        // exact 0 is impossible (pi irrational); below the smallest
        // subnormal we clamp and flag instead of erroring
        out.value = 0.0;
        out.underflow = true;
    } else {
        out.value = v.to_double();
        if (out.value > 1.0) out.value = 1.0;
    }
    return out;
}

}  // namespace cospow
