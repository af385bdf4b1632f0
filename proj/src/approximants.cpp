#include "cospow/approximants.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "cospow/errors.hpp"
#include "cospow/precision.hpp"
#include "cospow/real.hpp"

namespace cospow {

namespace {

// Partial quotients of pi at a fixed working precision. Returns an empty
// vector when the working precision is exhausted before `terms` quotients.
std::vector<long long> cf_at_precision(int terms, long prec) {
    Real x = Real::pi(prec);
    std::vector<long long> out;
    out.reserve(terms);
    for (int i = 0; i < terms; ++i) {
        long long a = x.floor_ll();
        out.push_back(a);
        Real frac = x - Real(a, prec);
        if (frac.sign() <= 0) return {};  // ran out of digits
        x = Real(1LL, prec) / frac;
    }
    return out;
}

// |p - q*pi| and |pi - p/q|, recomputed at doubled precision until the two
// runs agree to 2^-48 relative error.
void fill_quality(RationalApprox& ra) {
    long prec = 192;
    double res_prev = std::numeric_limits<double>::quiet_NaN();
    double err_prev = res_prev;
    double mu_prev = res_prev;
    for (;;) {
        check_precision(2 * prec);
        Real pi = Real::pi(2 * prec);
        Real residual = abs(Real(ra.p, 2 * prec) - Real(ra.q, 2 * prec) * pi);
        Real err = residual / Real(ra.q, 2 * prec);
        double res_d = residual.to_double();
        double err_d = err.to_double();
        double mu_d = 0.0;
        if (ra.q >= 2 && err.sign() > 0)
            mu_d = (-log(err) / log(Real(ra.q, 2 * prec))).to_double();
        auto close = [](double a, double b) {
            return a == b || std::abs(a - b) <= std::ldexp(std::abs(b), -48);
        };
        if (close(res_prev, res_d) && close(err_prev, err_d) && close(mu_prev, mu_d)) {
            ra.residual = res_d;
            ra.err = err_d;
            if (ra.q >= 2) ra.mu_eff = mu_d;
            return;
        }
        res_prev = res_d;
        err_prev = err_d;
        mu_prev = mu_d;
        prec *= 2;
    }
}

}  // namespace

std::vector<long long> cf_expansion(int max_terms) {
    if (max_terms < 1) throw DomainError("max_terms must be >= 1");
    long prec = 64 + 8L * max_terms;
    for (;;) {
        if (2 * prec > max_precision_bits())
            throw ResourceLimitError("cannot certify " + std::to_string(max_terms) +
                                     " partial quotients within the precision cap");
        auto a = cf_at_precision(max_terms, prec);
        auto b = cf_at_precision(max_terms, 2 * prec);
        if (!a.empty() && a == b) return a;
        prec *= 2;
    }
}

std::vector<RationalApprox> approximations(long long max_q, bool include_semiconvergents) {
    if (max_q < 1) throw DomainError("max_q must be >= 1");

    int terms = 16;
    std::vector<long long> quots = cf_expansion(terms);

    std::vector<RationalApprox> out;
    long long pm1 = 1, qm1 = 0;       // convergent k-1 (seeded as 1/0)
    long long p0 = quots[0], q0 = 1;  // convergent k

    RationalApprox first{p0, q0, ApproxKind::convergent};
    fill_quality(first);
    double best_err = first.err;
    out.push_back(first);

    for (std::size_t j = 1;; ++j) {
        if (j >= quots.size()) {
            terms *= 2;
            quots = cf_expansion(terms);
        }
        long long a = quots[j];
        bool exhausted = false;
        for (long long t = 1; t <= a; ++t) {
            __int128 qw = static_cast<__int128>(t) * q0 + qm1;
            __int128 pw = static_cast<__int128>(t) * p0 + pm1;
            if (qw > max_q) {
                exhausted = true;
                break;
            }
            if (pw > std::numeric_limits<long long>::max())
                throw ResourceLimitError("approximant numerator overflows 64 bits");
            RationalApprox ra{static_cast<long long>(pw), static_cast<long long>(qw),
                              t == a ? ApproxKind::convergent : ApproxKind::semiconvergent};
            if (ra.kind == ApproxKind::semiconvergent && !include_semiconvergents) continue;
            fill_quality(ra);
            if (ra.kind == ApproxKind::semiconvergent && !(ra.err < best_err)) continue;
            best_err = std::min(best_err, ra.err);
            out.push_back(ra);
        }
        if (exhausted) break;
        long long pn = a * p0 + pm1;
        long long qn = a * q0 + qm1;
        pm1 = p0;
        qm1 = q0;
        p0 = pn;
        q0 = qn;
    }
    return out;
}

double mu_eff(const RationalApprox& approx) {
    if (approx.q <= 1) throw DomainError("mu_eff requires q >= 2");
    if (!(approx.err > 0)) throw DomainError("mu_eff requires err > 0");
    return -std::log(approx.err) / std::log(static_cast<double>(approx.q));
}

std::vector<long long> progression_candidates(long long max_q) {
    if (max_q < 1) throw DomainError("max_q must be >= 1");
    std::set<long long> seen;
    for (const auto& ra : approximations(max_q, true)) seen.insert(ra.p);
    return {seen.begin(), seen.end()};
}

}  // namespace cospow
