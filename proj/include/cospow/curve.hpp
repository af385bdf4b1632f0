#pragma once

#include <concepts>
#include <span>
#include <vector>

namespace cospow {

// Arithmetic progression n_k = p*k + d with the residuals that define its
// continuous envelope curve f(x) = |cos(rp*(x-d)/p + rd)|^(x^gamma).
struct Progression {
    long long p = 1;   // common difference
    long long d = 0;   // offset (smallest member)
    double gamma = 1.0;
    double rp = 0.0;   // p - pi*Q(p)
    double rd = 0.0;   // d - pi*Q(d)
};

// Residuals are computed at the precision needed for index p*k_max + d.
Progression make_progression(long long p, long long d, double gamma, long long k_max = 1'000'000);

// The envelope curve at x >= 1; at integer points x = p*k + d this equals
// seq_value(p*k + d, gamma) up to the shared precision budget.
double eval_curve(const Progression& prog, double x);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct GaussianFit {
    double amplitude = 0.0;
    double mean = 0.0;
    double sigma = 0.0;
    double r_squared = 0.0;
    bool converged = false;
};

// Damped least-squares fit of y ~ A * exp(-((x - mean)/sigma)^2).
// Initialization: A = max y, mean = argmax x, sigma = mean half-width at
// A/e. Iterates until relative parameter change < 1e-9 or 200 iterations
// (non-convergence is reported via the flag, not an exception).
GaussianFit fit_gaussian(std::span<const Point> points);

// 1 - SS_res/SS_tot for an arbitrary model ŷ(x).
template <typename Model>
    requires std::invocable<Model&, double>
double r_squared(std::span<const Point> points, Model&& model);

double r_squared(std::span<const Point> points, const GaussianFit& fit);
double r_squared(std::span<const Point> points, const Progression& prog);

namespace detail {
void check_r_squared_input(std::span<const Point> points);
}

template <typename Model>
    requires std::invocable<Model&, double>
double r_squared(std::span<const Point> points, Model&& model) {
    detail::check_r_squared_input(points);
    double mean = 0.0;
    for (const auto& pt : points) mean += pt.y;
    mean /= static_cast<double>(points.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& pt : points) {
        double r = pt.y - model(pt.x);
        double t = pt.y - mean;
        ss_res += r * r;
        ss_tot += t * t;
    }
    return 1.0 - ss_res / ss_tot;
}

}  // namespace cospow
