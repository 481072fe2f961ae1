#pragma once

// Spherical Bessel family, Legendre polynomials and half-interval Legendre
// overlaps.
//
// Normalizations:
//   j_0(x) = sin x / x,  y_0(x) = -cos x / x,  h1 = j + i y,  h2 = j - i y
//   i_0(x) = sinh x / x, k_0(x) = exp(-x) / x   (no pi/2 prefactor)
//
// Derivatives are with respect to the argument x and come from the same
// recurrence pass as the values:
//   f_n'(x) = (n/x) f_n - f_{n+1}   for j, y, k
//   i_n'(x) = (n/x) i_n + i_{n+1}

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ahoop {

struct RadialValue {
    double value;
    double derivative;
};

struct ComplexRadialValue {
    std::complex<double> value;
    std::complex<double> derivative;
};

enum class BesselKind { j, y, h1, h2, i, k };

namespace detail {

inline void check_order_argument(int n, double x, const char* who) {
    if (n < 0) throw std::invalid_argument(std::string(who) + ": order must be non-negative");
    if (!(x > 0) || !std::isfinite(x))
        throw std::invalid_argument(std::string(who) + ": argument must be positive and finite");
}

/// Miller start index for downward recurrence up to order top at argument x.
inline int miller_start(int top, double x) {
    const double m = std::max(static_cast<double>(top), x);
    return static_cast<int>(m) + 20 + static_cast<int>(std::sqrt(60.0 * (m + 1.0)));
}

/// Orders 0..top of a minimal solution by downward recurrence
/// f_{m-1} = (2m+1)/x f_m + sign * f_{m+1}, left unnormalized.
/// sign = -1 for j (ordinary), +1 for i (modified).
inline std::vector<double> miller_downward(int top, double x, double sign) {
    const int start = miller_start(top, x);
    std::vector<double> f(start + 2, 0.0);
    f[start] = 1e-300;
    constexpr double big = 1e250;
    for (int m = start; m >= 1; --m) {
        f[m - 1] = (2.0 * m + 1.0) / x * f[m] + sign * f[m + 1];
        if (std::abs(f[m - 1]) > big)
            for (int q = m - 1; q <= start; ++q) f[q] /= big;
    }
    f.resize(top + 1);
    return f;
}

} // namespace detail

/// j_n(x) for n = 0..nmax+1 (one extra order for derivatives).
inline std::vector<double> sph_j_orders(int nmax, double x) {
    detail::check_order_argument(nmax, x, "sph_j");
    const int top = nmax + 1;
    std::vector<double> f = detail::miller_downward(top, x, -1.0);
    const double j0 = std::sin(x) / x;
    const double j1 = (std::sin(x) / x - std::cos(x)) / x;
    // Normalize on whichever of j_0, j_1 is further from a zero.
    // The closed form of j_1 cancels at small x, so only the normalizing
    // order is overwritten with its closed form.
    const bool on_j0 = std::abs(j0) >= std::abs(j1);
    const double scale = on_j0 ? j0 / f[0] : j1 / f[1];
    for (double& v : f) v *= scale;
    if (on_j0)
        f[0] = j0;
    else
        f[1] = j1;
    return f;
}

/// y_n(x) for n = 0..nmax+1 by upward recurrence.
inline std::vector<double> sph_y_orders(int nmax, double x) {
    detail::check_order_argument(nmax, x, "sph_y");
    const int top = nmax + 1;
    std::vector<double> f(top + 1);
    f[0] = -std::cos(x) / x;
    f[1] = (-std::cos(x) / x - std::sin(x)) / x;
    for (int m = 1; m < top; ++m) f[m + 1] = (2.0 * m + 1.0) / x * f[m] - f[m - 1];
    return f;
}

/// i_n(x) for n = 0..nmax+1, downward recurrence normalized on i_0.
inline std::vector<double> sph_i_orders(int nmax, double x) {
    detail::check_order_argument(nmax, x, "sph_i");
    if (x > 700.0) throw std::range_error("sph_i: argument overflows sinh");
    const int top = nmax + 1;
    std::vector<double> f = detail::miller_downward(top, x, 1.0);
    const double i0 = x < 1e-8 ? 1.0 : std::sinh(x) / x;
    const double scale = i0 / f[0];
    for (double& v : f) v *= scale;
    f[0] = i0;
    return f;
}

/// k_n(x) for n = 0..nmax+1 by upward recurrence, k_0 = exp(-x)/x.
inline std::vector<double> sph_k_orders(int nmax, double x) {
    detail::check_order_argument(nmax, x, "sph_k");
    const int top = nmax + 1;
    std::vector<double> f(top + 1);
    const double e = std::exp(-x);
    f[0] = e / x;
    f[1] = e * (1.0 + x) / (x * x);
    for (int m = 1; m < top; ++m) f[m + 1] = f[m - 1] + (2.0 * m + 1.0) / x * f[m];
    for (double v : f)
        if (!std::isfinite(v)) throw std::range_error("sph_k: overflow at small argument");
    return f;
}

inline RadialValue sph_j(int n, double x) {
    const auto f = sph_j_orders(n, x);
    return {f[n], n / x * f[n] - f[n + 1]};
}

inline RadialValue sph_y(int n, double x) {
    const auto f = sph_y_orders(n, x);
    const RadialValue r{f[n], n / x * f[n] - f[n + 1]};
    if (!std::isfinite(r.value) || !std::isfinite(r.derivative))
        throw std::range_error("sph_y: overflow at small argument");
    return r;
}

inline RadialValue sph_i(int n, double x) {
    const auto f = sph_i_orders(n, x);
    return {f[n], n / x * f[n] + f[n + 1]};
}

inline RadialValue sph_k(int n, double x) {
    const auto f = sph_k_orders(n, x);
    return {f[n], n / x * f[n] - f[n + 1]};
}

inline ComplexRadialValue sph_h1(int n, double x) {
    const RadialValue j = sph_j(n, x);
    const RadialValue y = sph_y(n, x);
    return {{j.value, y.value}, {j.derivative, y.derivative}};
}

inline ComplexRadialValue sph_h2(int n, double x) {
    const RadialValue j = sph_j(n, x);
    const RadialValue y = sph_y(n, x);
    return {{j.value, -y.value}, {j.derivative, -y.derivative}};
}

/// Uniform entry point over the six kinds; real kinds have zero imaginary part.
inline ComplexRadialValue sph_bessel(BesselKind kind, int n, double x) {
    auto lift = [](RadialValue r) { return ComplexRadialValue{r.value, r.derivative}; };
    switch (kind) {
    case BesselKind::j: return lift(sph_j(n, x));
    case BesselKind::y: return lift(sph_y(n, x));
    case BesselKind::h1: return sph_h1(n, x);
    case BesselKind::h2: return sph_h2(n, x);
    case BesselKind::i: return lift(sph_i(n, x));
    case BesselKind::k: return lift(sph_k(n, x));
    }
    throw std::invalid_argument("sph_bessel: unknown kind");
}

/// P_n(mu) by the three-term recurrence.
inline double legendre_p(int n, double mu) {
    if (n < 0) throw std::invalid_argument("legendre_p: order must be non-negative");
    if (!(std::abs(mu) <= 1.0)) throw std::invalid_argument("legendre_p: |mu| must not exceed 1");
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = mu;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * mu * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// P_n(0) for even n: (-1)^{n/2} (n-1)!! / n!!, zero for odd n.
inline double legendre_at_zero(int n) {
    if (n < 0) throw std::invalid_argument("legendre_at_zero: order must be non-negative");
    if (n % 2 == 1) return 0.0;
    double p = 1.0;
    for (int m = 0; m < n; m += 2) p *= -(m + 1.0) / (m + 2.0);
    return p;
}

/// P_l'(0) = l P_{l-1}(0) for odd l, zero for even l.
inline double legendre_derivative_at_zero(int l) {
    if (l < 0) throw std::invalid_argument("legendre_derivative_at_zero: order must be non-negative");
    if (l % 2 == 0) return 0.0;
    return l * legendre_at_zero(l - 1);
}

/// Integral of P_n P_l over mu in [0, 1] for even n and odd l. From the
/// Legendre equation the integral reduces to the boundary term at mu = 0:
///   O_{n,l} = P_n(0) P_l'(0) / (l(l+1) - n(n+1)).
inline double overlap(int n, int l) {
    if (n < 0 || n % 2 != 0) throw std::invalid_argument("overlap: n must be even and non-negative");
    if (l < 1 || l % 2 != 1) throw std::invalid_argument("overlap: l must be odd and positive");
    return legendre_at_zero(n) * legendre_derivative_at_zero(l) / (l * (l + 1.0) - n * (n + 1.0));
}

/// Precomputed O_{n,l} for even n <= max_n and odd l <= max_l. Lookups
/// outside the table are computed on demand. Immutable after construction.
class OverlapTable {
  public:
    OverlapTable(int max_n, int max_l)
        : max_n_(std::max(0, max_n - max_n % 2)), max_l_(max_l - (max_l + 1) % 2) {
        if (max_n < 0 || max_l < 1) throw std::invalid_argument("OverlapTable: bad bounds");
        cols_ = (max_l_ + 1) / 2;
        values_.resize(static_cast<std::size_t>(max_n_ / 2 + 1) * cols_);
        for (int n = 0; n <= max_n_; n += 2)
            for (int l = 1; l <= max_l_; l += 2) values_[index(n, l)] = overlap(n, l);
    }

    int max_n() const { return max_n_; }
    int max_l() const { return max_l_; }

    double operator()(int n, int l) const {
        if (n >= 0 && n <= max_n_ && n % 2 == 0 && l >= 1 && l <= max_l_ && l % 2 == 1)
            return values_[index(n, l)];
        return overlap(n, l);
    }

  private:
    std::size_t index(int n, int l) const {
        return static_cast<std::size_t>(n / 2) * cols_ + static_cast<std::size_t>(l / 2);
    }

    int max_n_;
    int max_l_;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

} // namespace ahoop
