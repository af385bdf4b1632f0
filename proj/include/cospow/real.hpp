#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

namespace cospow {

// RAII wrapper over mpfr_t. Each value carries its own binary precision;
// binary operations round to the wider of the two operands' precisions.
// All rounding is to nearest, ties to even.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long long x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_sj(v_, x, MPFR_RNDN);
    }
    Real(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // Parses a decimal string, rounding to `prec` bits.
    static Real from_string(const std::string& s, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Nearest integer, ties to even.
    long long round_ll() const { return static_cast<long long>(mpfr_get_sj(v_, MPFR_RNDN)); }
    long long floor_ll() const { return static_cast<long long>(mpfr_get_sj(v_, MPFR_RNDD)); }

    std::string to_string(int digits = 17) const {
        char buf[512];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
        return buf;
    }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real cos(const Real& a) {
        Real r(a.prec());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real exp(const Real& a) {
        Real r(a.prec());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real log(const Real& a) {
        Real r(a.prec());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqr(const Real& a) {
        Real r(a.prec());
        mpfr_sqr(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    friend int cmp_d(const Real& a, double d) { return mpfr_cmp_d(a.v_, d); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;
};

}  // namespace cospow
