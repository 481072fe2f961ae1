#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <algorithm>
#include <vector>

namespace ahoop {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on P_n from the Chebyshev initial guess.
class GaussLegendreRule {
  public:
    explicit GaussLegendreRule(int points) : nodes_(points), weights_(points) {
        if (points < 1) throw std::invalid_argument("GaussLegendreRule: need at least one point");
        const int n = points;
        // P_n(x) and P_n'(x) by the three-term recurrence.
        auto legendre = [n](double x) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
        };
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int iter = 0; iter < 100; ++iter) {
                const auto [p, dp] = legendre(x);
                const double dx = p / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double dp = legendre(x).second;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes_[i] = -x;
            nodes_[n - 1 - i] = x;
            weights_[i] = w;
            weights_[n - 1 - i] = w;
        }
        if (n % 2 == 1) nodes_[n / 2] = 0.0;
    }

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    template <typename F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
        return half * sum;
    }

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

struct QuadratureResult {
    double value;
    double error_estimate;
    int panels;
};

namespace detail {

template <typename F>
void adaptive_panel(const GaussLegendreRule& rule, F& f, double a, double b, double whole,
                    double tol, int depth, QuadratureResult& acc) {
    const double mid = 0.5 * (a + b);
    const double left = rule.integrate(f, a, mid);
    const double right = rule.integrate(f, mid, b);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol || depth >= 48 || mid <= a || mid >= b) {
        acc.value += left + right;
        acc.error_estimate += diff;
        acc.panels += 2;
        return;
    }
    adaptive_panel(rule, f, a, mid, left, 0.5 * tol, depth + 1, acc);
    adaptive_panel(rule, f, mid, b, right, 0.5 * tol, depth + 1, acc);
}

} // namespace detail

/// Adaptive Gauss-Legendre integration by panel bisection. The tolerance is
/// relative to a coarse 8-panel estimate of the integral of |f|.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12,
                                    double abs_tol = 0.0) {
    static const GaussLegendreRule rule(20);
    const double whole = rule.integrate(f, a, b);
    double scale = 0.0;
    constexpr int seed_panels = 8;
    for (int i = 0; i < seed_panels; ++i) {
        const double lo = a + (b - a) * i / seed_panels;
        const double hi = a + (b - a) * (i + 1) / seed_panels;
        scale += std::abs(rule.integrate(f, lo, hi));
    }
    QuadratureResult acc{0.0, 0.0, 0};
    const double tol = std::max(abs_tol, rel_tol * scale);
    detail::adaptive_panel(rule, f, a, b, whole, tol, 0, acc);
    return acc;
}

} // namespace ahoop
