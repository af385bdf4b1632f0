#include "cospow/curve.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <limits>

#include "cospow/errors.hpp"
#include "cospow/precision.hpp"

namespace cospow {

Progression make_progression(long long p, long long d, double gamma, long long k_max) {
    if (p < 1) throw DomainError("p must be >= 1");
    if (d < 0) throw DomainError("d must be >= 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be >= 0");
    if (k_max < 1) throw DomainError("k_max must be >= 1");
    long long n_max = p * k_max + d;
    PrecisionBudget budget = required_precision(n_max, gamma);
    Progression prog;
    prog.p = p;
    prog.d = d;
    prog.gamma = gamma;
    prog.rp = nearest_multiple(p, budget).r.to_double();
    prog.rd = nearest_multiple(d, budget).r.to_double();
    return prog;
}

double eval_curve(const Progression& prog, double x) {
    if (!(x >= 1.0)) throw DomainError("x must be >= 1");
    long long nx = std::max<long long>(1, llround(x));
    long prec = required_precision(nx, prog.gamma).total();
    check_precision(prec);
    Real alpha = (Real(x, prec) - Real(prog.d, prec)) / Real(prog.p, prec);
    Real arg = Real(prog.rp, prec) * alpha + Real(prog.rd, prec);
    Real e = pow(Real(x, prec), Real(prog.gamma, prec));
    Real v = pow(abs(cos(arg)), e);
    if (v.sign() > 0 && cmp_d(v, DBL_TRUE_MIN) < 0) return 0.0;
    return std::min(v.to_double(), 1.0);
}

namespace {

// Solves the 3x3 system a*delta = b in place. Returns false if singular.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b,
            std::array<double, 3>& delta) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < 3; ++r) {
            double f = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 3; ++c) s -= a[r][c] * delta[c];
        delta[r] = s / a[r][r];
    }
    return true;
}

double sum_squares(std::span<const Point> pts, double A, double mu, double sig) {
    double ss = 0.0;
    for (const auto& pt : pts) {
        double t = (pt.x - mu) / sig;
        double r = A * std::exp(-t * t) - pt.y;
        ss += r * r;
    }
    return ss;
}

}  // namespace

GaussianFit fit_gaussian(std::span<const Point> points) {
    if (points.size() < 5) throw FitError("need at least 5 points");
    std::size_t imax = 0;
    bool all_equal = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].y != points[0].y) all_equal = false;
        if (points[i].y > points[imax].y) imax = i;
    }
    if (all_equal) throw FitError("constant y values");
    if (!(points[imax].y > 0)) throw FitError("max y must be positive");

    double A = points[imax].y;
    double mu = points[imax].x;
    double thresh = A / std::exp(1.0);
    double left = std::numeric_limits<double>::quiet_NaN();
    double right = left;
    for (std::size_t i = imax; i-- > 0;) {
        if (points[i].y < thresh) {
            left = mu - points[i].x;
            break;
        }
    }
    for (std::size_t i = imax + 1; i < points.size(); ++i) {
        if (points[i].y < thresh) {
            right = points[i].x - mu;
            break;
        }
    }
    double sig;
    if (std::isnan(left) && std::isnan(right))
        sig = (points.back().x - points.front().x) / 4.0;
    else if (std::isnan(left))
        sig = right;
    else if (std::isnan(right))
        sig = left;
    else
        sig = 0.5 * (left + right);
    if (!(sig > 0)) sig = 1.0;

    double lambda = 1e-3;
    double ss = sum_squares(points, A, mu, sig);
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtf{};
        for (const auto& pt : points) {
            double t = (pt.x - mu) / sig;
            double e = std::exp(-t * t);
            double f = A * e - pt.y;
            std::array<double, 3> j = {e, A * e * 2.0 * t / sig, A * e * 2.0 * t * t / sig};
            for (int r = 0; r < 3; ++r) {
                jtf[r] += j[r] * f;
                for (int c = 0; c < 3; ++c) jtj[r][c] += j[r] * j[c];
            }
        }
        bool stepped = false;
        for (int tries = 0; tries < 40; ++tries) {
            auto damped = jtj;
            for (int k = 0; k < 3; ++k) damped[k][k] += lambda * jtj[k][k];
            std::array<double, 3> delta{};
            std::array<double, 3> neg = {-jtf[0], -jtf[1], -jtf[2]};
            if (!solve3(damped, neg, delta)) {
                lambda *= 8.0;
                continue;
            }
            double A2 = A + delta[0], mu2 = mu + delta[1], sig2 = sig + delta[2];
            if (!(sig2 > 0) || !std::isfinite(A2) || !std::isfinite(mu2)) {
                lambda *= 8.0;
                continue;
            }
            double ss2 = sum_squares(points, A2, mu2, sig2);
            if (ss2 <= ss) {
                double rel = 0.0;
                rel = std::max(rel, std::abs(delta[0]) / (std::abs(A) + 1e-300));
                rel = std::max(rel, std::abs(delta[1]) / (std::abs(mu) + 1e-300));
                rel = std::max(rel, std::abs(delta[2]) / (std::abs(sig) + 1e-300));
                A = A2;
                mu = mu2;
                sig = sig2;
                ss = ss2;
                lambda = std::max(lambda / 8.0, 1e-14);
                if (rel < 1e-9) converged = true;
                stepped = true;
                break;
            }
            lambda *= 8.0;
        }
        if (!stepped) break;  // stalled; report best-so-far
    }

    GaussianFit fit;
    fit.amplitude = A;
    fit.mean = mu;
    fit.sigma = std::abs(sig);
    fit.converged = converged;
    fit.r_squared = r_squared(points, fit);
    return fit;
}

namespace detail {
void check_r_squared_input(std::span<const Point> points) {
    if (points.size() < 2) throw DomainError("need at least 2 points");
    for (const auto& pt : points)
        if (pt.y != points[0].y) return;
    throw DomainError("constant y values");
}
}  // namespace detail

double r_squared(std::span<const Point> points, const GaussianFit& fit) {
    return r_squared(points, [&](double x) {
        double t = (x - fit.mean) / fit.sigma;
        return fit.amplitude * std::exp(-t * t);
    });
}

double r_squared(std::span<const Point> points, const Progression& prog) {
    return r_squared(points, [&](double x) { return eval_curve(prog, x); });
}

}  // namespace cospow
