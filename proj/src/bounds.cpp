#include "cospow/bounds.hpp"

#include <cmath>

#include "cospow/errors.hpp"
#include "cospow/precision.hpp"

namespace cospow {

Real exp_pi_sq_over_2_bound(long bits) {
    if (bits < 24) throw DomainError("bits must be >= 24");
    long prec = bits + 32;
    check_precision(prec);
    Real pi = Real::pi(prec);
    return exp(-(pi * pi) / Real(2LL, prec));
}

mpz_class central_moment_bruteforce(long m, long order) {
    if (m < 1) throw DomainError("m must be >= 1");
    if (order < 2 || order % 2 != 0) throw DomainError("order must be even and >= 2");
    if (m > 512) throw ResourceLimitError("m exceeds the brute-force bound of 512");
    mpz_class sum = 0;
    mpz_class binom, base, term;
    for (long i = 0; i <= m; ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), m, i);
        base = 2 * i - m;
        mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), order);
        sum += binom * term;
    }
    return sum;
}

mpz_class moment_closed_form(long m, long order) {
    if (m < 1) throw DomainError("m must be >= 1");
    mpz_class mm = m;
    mpz_class poly;
    switch (order) {
        case 2: poly = mm; break;
        case 4: poly = mm * (3 * mm - 2); break;
        case 6: poly = mm * (15 * mm * mm - 30 * mm + 16); break;
        default: throw DomainError("closed forms are available for orders 2, 4, 6 only");
    }
    mpz_class out;
    mpz_mul_2exp(out.get_mpz_t(), poly.get_mpz_t(), m);
    return out;
}

mpz_class double_factorial_odd(long k) {
    if (k < 1) throw DomainError("k must be >= 1");
    mpz_class out;
    mpz_2fac_ui(out.get_mpz_t(), 2 * k - 1);
    return out;
}

SeriesTruncation truncated_limsup_series(long max_order) {
    if (max_order < 2 || max_order > 16 || max_order % 2 != 0)
        throw DomainError("max_order must be even and in [2, 16]");
    mpq_class sum = 1;
    mpz_class fact;
    for (long k = 1; k <= max_order / 2; ++k) {
        mpz_fac_ui(fact.get_mpz_t(), 2 * k);
        mpq_class term(double_factorial_odd(k), fact);
        term.canonicalize();
        if (k % 2 == 1)
            sum -= term;
        else
            sum += term;
    }
    SeriesTruncation out;
    out.max_order = max_order;
    out.partial_sum = sum.get_d();
    out.last_term_sign = (max_order / 2) % 2 == 1 ? TermSign::negative : TermSign::positive;
    out.valid_lower_bound = out.last_term_sign == TermSign::negative;
    return out;
}

std::vector<double> decay_profile(double c, double growth, std::span<const double> xs) {
    if (!(c > 0)) throw DomainError("c must be > 0");
    if (!(growth > 0)) throw DomainError("growth must be > 0");
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (!(x > 1)) throw DomainError("every x must be > 1");
        double expnt = c * std::pow(x, 1.0 + growth);
        out.push_back(std::exp(expnt * std::log1p(-1.0 / x)));
    }
    return out;
}

}  // namespace cospow
