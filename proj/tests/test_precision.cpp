#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <cmath>
#include <random>

#include "cospow/errors.hpp"
#include "cospow/precision.hpp"
#include "cospow/real.hpp"

using namespace cospow;

namespace {

// Independent pi oracle: Machin's formula pi = 16 atan(1/5) - 4 atan(1/239)
// in fixed-point integer arithmetic, entirely separate from mpfr_const_pi.
Real machin_pi(long bits) {
    const long shift = bits + 64;
    auto atan_inv = [&](unsigned long x) {
        mpz_class term = (mpz_class(1) << shift) / x;
        mpz_class sum = term;
        const unsigned long x2 = x * x;
        for (unsigned long k = 1; term != 0; ++k) {
            term /= x2;
            mpz_class t = term / (2 * k + 1);
            if (t == 0) break;
            if (k % 2 == 1)
                sum -= t;
            else
                sum += t;
        }
        return sum;
    };
    mpz_class fixed = 16 * atan_inv(5) - 4 * atan_inv(239);
    Real out(bits + 64);
    mpfr_set_z(out.raw(), fixed.get_mpz_t(), MPFR_RNDN);
    mpfr_div_2exp(out.raw(), out.raw(), shift, MPFR_RNDN);
    return out;
}

double ldexp1(int e) { return std::ldexp(1.0, e); }

}  // namespace

TEST_CASE("pi_to_precision matches coarse rounding at 10 bits") {
    Real pi10 = pi_to_precision(10);
    CHECK(std::abs(pi10.to_double() - 3.1416) < ldexp1(-9));
}

TEST_CASE("pi_to_precision agrees with the Machin oracle") {
    for (long bits : {64L, 128L, 256L, 1024L}) {
        Real lib = pi_to_precision(bits);
        Real oracle = machin_pi(bits);
        CHECK(abs(lib - oracle) < Real(ldexp1(1 - static_cast<int>(bits)), 64));
    }
}

TEST_CASE("pi_to_precision enforces the cap and the minimum") {
    CHECK_THROWS_AS(pi_to_precision((1L << 20) + 1), ResourceLimitError);
    CHECK_THROWS_AS(pi_to_precision(1), DomainError);
    set_max_precision_bits(1L << 21);
    CHECK_NOTHROW(pi_to_precision((1L << 20) + 1));
    set_max_precision_bits(1L << 20);
    CHECK_THROWS_AS(pi_to_precision((1L << 20) + 1), ResourceLimitError);
}

TEST_CASE("required_precision policy formula") {
    CHECK(required_precision(1, 0.0).bits == 68);  // 64 + ceil(2*log2 3)
    CHECK(required_precision(1'000'000, 2.0).bits == 144);
    CHECK_THROWS_AS(required_precision(10, -1.0), DomainError);
    CHECK_THROWS_AS(required_precision(0, 1.0), DomainError);

    // monotone non-decreasing in both arguments
    long prev = 0;
    for (long long n : {1LL, 5LL, 100LL, 12345LL, 1000000LL, 100000000LL}) {
        long b = required_precision(n, 1.0).bits;
        CHECK(b >= prev);
        prev = b;
    }
    prev = 0;
    for (double g : {0.0, 0.5, 1.0, 1.7, 2.0, 2.5}) {
        long b = required_precision(1000, g).bits;
        CHECK(b >= prev);
        prev = b;
    }
}

TEST_CASE("nearest_multiple examples") {
    Residual r1 = nearest_multiple(1);
    CHECK(r1.q == 0);
    CHECK(r1.r.to_double() == doctest::Approx(1.0).epsilon(1e-15));

    Residual r3 = nearest_multiple(3);
    CHECK(r3.q == 1);
    CHECK(r3.r.to_double() == doctest::Approx(-0.1415926535897932384626434).epsilon(1e-14));

    Residual r355 = nearest_multiple(355);
    CHECK(r355.q == 113);
    CHECK(r355.r.to_double() ==
          doctest::Approx(3.014435336405372129768942e-5).epsilon(1e-12));

    CHECK_THROWS_AS(nearest_multiple(-1), DomainError);
}

TEST_CASE("residual bound |r| <= pi/2 and Q(n) ratio bound up to 1e5") {
    const double half_pi = 1.5707963267948966;
    const double pi = 3.141592653589793;
    for (long long n = 1; n <= 100'000; ++n) {
        Residual res = nearest_multiple(n);
        double r = res.r.to_double();
        CHECK(std::abs(r) <= half_pi);
        if (n >= 2 && res.q >= 1) {
            // quantified form of n/Q(n) -> pi: |n/q - pi| <= pi/(2q)
            double ratio = static_cast<double>(n) / static_cast<double>(res.q);
            CHECK(std::abs(ratio - pi) <= pi / (2.0 * static_cast<double>(res.q)) + 1e-15);
        }
    }
}

TEST_CASE("seq_value examples against the frozen big-float oracle") {
    CHECK(seq_value(3, 0.0).value == doctest::Approx(0.9899924966004454).epsilon(1e-13));
    CHECK(seq_value(355, 1.0).value == doctest::Approx(0.9999998387089509).epsilon(1e-13));
    CHECK(seq_value(355, 2.0).value == doctest::Approx(0.9999427433121891).epsilon(1e-13));
    CHECK(seq_value(833719, 1.0).value == doctest::Approx(0.9999977699724781).epsilon(1e-13));
    CHECK_THROWS_AS(seq_value(10, -0.5), DomainError);
    CHECK_THROWS_AS(seq_value(0, 1.0), DomainError);
}

TEST_CASE("seq_value(n, 0) equals |cos n|") {
    for (long long n : {1LL, 2LL, 3LL, 17LL, 355LL, 99991LL}) {
        double expected = std::abs(std::cos(static_cast<double>(n)));
        CHECK(seq_value(n, 0.0).value == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("doubled-precision recomputation agrees to 2^-48") {
    std::mt19937_64 rng(20260823);
    std::uniform_int_distribution<long long> ns(1, 100'000'000);
    std::uniform_real_distribution<double> gs(0.0, 2.5);
    for (int i = 0; i < 1000; ++i) {
        long long n = ns(rng);
        double g = gs(rng);
        PrecisionBudget b = required_precision(n, g);
        SeqValue v1 = seq_value(n, g, b);
        PrecisionBudget doubled{2 * b.bits, b.guard_bits};
        SeqValue v2 = seq_value(n, g, doubled);
        if (v2.value == 0.0) {
            CHECK(v1.value <= ldexp1(-900));
        } else {
            CHECK(std::abs(v1.value - v2.value) <= std::abs(v2.value) * ldexp1(-48));
        }
    }
}

TEST_CASE("cosine envelope inequalities on residuals") {
    for (long long n = 1; n <= 5000; ++n) {
        double r = nearest_multiple(n).r.to_double();
        double c = std::abs(std::cos(r));
        CHECK(c >= 1.0 - r * r / 2.0 - 1e-15);
        CHECK(c <= 1.0 - r * r / 2.0 + r * r * r * r / 24.0 + 1e-15);
    }
}

TEST_CASE("underflow clamps to zero with a flag") {
    // residual of 4 is ~0.86; 0.65^(4^8) is far below the subnormal range
    SeqValue v = seq_value(4, 8.0);
    CHECK(v.value == 0.0);
    CHECK(v.underflow);
    SeqValue w = seq_value(355, 1.0);
    CHECK_FALSE(w.underflow);
}
