#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cospow/approximants.hpp"
#include "cospow/errors.hpp"

using namespace cospow;

namespace {

bool contains_fraction(const std::vector<RationalApprox>& list, long long p, long long q) {
    return std::any_of(list.begin(), list.end(),
                       [&](const RationalApprox& a) { return a.p == p && a.q == q; });
}

const RationalApprox& find_fraction(const std::vector<RationalApprox>& list, long long p,
                                    long long q) {
    for (const auto& a : list)
        if (a.p == p && a.q == q) return a;
    throw std::runtime_error("fraction not found");
}

}  // namespace

TEST_CASE("cf_expansion yields the known partial quotients") {
    CHECK(cf_expansion(1) == std::vector<long long>{3});
    CHECK(cf_expansion(5) == std::vector<long long>{3, 7, 15, 1, 292});
    auto q10 = cf_expansion(10);
    CHECK(q10 == std::vector<long long>{3, 7, 15, 1, 292, 1, 1, 1, 2, 1});
    CHECK_THROWS_AS(cf_expansion(0), DomainError);
}

TEST_CASE("convergents with q <= 120") {
    auto list = approximations(120, false);
    CHECK(contains_fraction(list, 3, 1));
    CHECK(contains_fraction(list, 22, 7));
    CHECK(contains_fraction(list, 333, 106));
    CHECK(contains_fraction(list, 355, 113));
    for (const auto& a : list) CHECK(a.kind == ApproxKind::convergent);
    CHECK(std::is_sorted(list.begin(), list.end(),
                         [](const auto& a, const auto& b) { return a.q < b.q; }));
    CHECK_THROWS_AS(approximations(0, false), DomainError);
}

TEST_CASE("semiconvergent 52163/16604 appears under the improving filter") {
    auto list = approximations(17000, true);
    CHECK(contains_fraction(list, 52163, 16604));
    CHECK(find_fraction(list, 52163, 16604).kind == ApproxKind::semiconvergent);
    // 13/4, 16/5, 19/6 are classical first-kind best approximations
    CHECK(contains_fraction(list, 13, 4));
    CHECK(contains_fraction(list, 19, 6));
    // non-improving semiconvergents like 4/1 and 25/8 stay out
    CHECK_FALSE(contains_fraction(list, 4, 1));
    CHECK_FALSE(contains_fraction(list, 25, 8));
}

TEST_CASE("paper's larger approximants") {
    auto list = approximations(300'000, false);
    CHECK(contains_fraction(list, 833719, 265381));
    auto wide = approximations(14'000'000, true);
    CHECK(contains_fraction(wide, 42208400, 13435351));
}

TEST_CASE("every convergent satisfies |pi - p/q| < 1/q^2") {
    for (const auto& a : approximations(1'000'000, false)) {
        double q = static_cast<double>(a.q);
        CHECK(a.err < 1.0 / (q * q));
        CHECK(a.residual == doctest::Approx(q * a.err).epsilon(1e-12));
    }
}

TEST_CASE("consecutive convergent residuals alternate in sign and shrink") {
    auto list = approximations(1'000'000, false);
    // stored residuals are magnitudes; recover the sign from p - q*pi
    const double pi = 3.141592653589793;
    double prev_mag = 1e300;
    int prev_sign = 0;
    for (const auto& a : list) {
        double signed_res = static_cast<double>(a.p) - static_cast<double>(a.q) * pi;
        int sign = signed_res > 0 ? 1 : -1;
        if (prev_sign != 0) CHECK(sign == -prev_sign);
        CHECK(a.residual < prev_mag);
        prev_sign = sign;
        prev_mag = a.residual;
    }
}

TEST_CASE("returned entries strictly improve the error |pi - p/q|") {
    auto list = approximations(20'000, true);
    double best = 1e300;
    for (const auto& a : list) {
        CHECK(a.err < best);
        best = a.err;
    }
}

TEST_CASE("mu_eff diagnostics") {
    auto list = approximations(120, false);
    CHECK(mu_eff(find_fraction(list, 22, 7)) == doctest::Approx(3.429288337).epsilon(1e-6));
    CHECK(mu_eff(find_fraction(list, 355, 113)) == doctest::Approx(3.201958743).epsilon(1e-6));
    CHECK_THROWS_AS(mu_eff(find_fraction(list, 3, 1)), DomainError);

    // err < 1/q^2 forces mu_eff > 2 for every convergent with q >= 2
    for (const auto& a : approximations(1'000'000, false))
        if (a.q >= 2) CHECK(*a.mu_eff > 2.0 - 0.01);
}

TEST_CASE("progression_candidates") {
    auto cands = progression_candidates(120);
    for (long long want : {3LL, 22LL, 333LL, 355LL})
        CHECK(std::find(cands.begin(), cands.end(), want) != cands.end());
    CHECK(std::is_sorted(cands.begin(), cands.end()));
    CHECK(std::adjacent_find(cands.begin(), cands.end()) == cands.end());

    CHECK(progression_candidates(1) == std::vector<long long>{3});

    auto wide = progression_candidates(14'000'000);
    CHECK(std::find(wide.begin(), wide.end(), 42208400LL) != wide.end());
}
