#pragma once

// Single-channel scattering with an S wave inside the hoop sphere and a P
// wave outside. The hoop's flux reverses parity across r = R, so the only
// coupling is the continuity of the logarithmic derivative at r = R:
//
//   interior  j_0(k_0 r)
//   exterior  h1^(2)(k_1 r) + S h1^(1)(k_1 r)
//
// The Legendre overlap O_{0,1} multiplies both sides and cancels.

#include "ahoop/errors.hpp"
#include "ahoop/grid.hpp"
#include "ahoop/model.hpp"
#include "ahoop/parallel.hpp"
#include "ahoop/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace ahoop {

struct SMatrixPoint {
    double energy_over_w = 0.0;
    double k1R = 0.0;
    std::complex<double> s;
    double delta = 0.0; // radians; in [0, pi) unless unwrapped along a scan
    double sin2_delta = 0.0;
    double inelasticity = 0.0;
};

namespace detail {

/// S for the S/P system from the pole-free matching condition
/// k_0 j_0'(k_0R) u(R) - j_0(k_0R) u'(R) = 0 with u = h2 + S h1.
inline std::complex<double> sp_s_matrix(double mass_ratio, double e) {
    const double k0 = wavenumber_R(mass_ratio, Channel::interior(0), e).magnitude;
    const double k1 = wavenumber_R(mass_ratio, Channel::exterior(1), e).magnitude;
    const RadialValue j0 = sph_j(0, k0);
    const ComplexRadialValue h1 = sph_h1(1, k1);
    const double a = k0 * j0.derivative; // interior slope
    const double b = j0.value;
    const std::complex<double> out = a * h1.value - b * k1 * h1.derivative;
    return -std::conj(out) / out;
}

inline double reduce_phase(double delta) {
    double d = std::fmod(delta, std::numbers::pi);
    if (d < 0) d += std::numbers::pi;
    return d;
}

} // namespace detail

/// S-matrix element at e = E/W for the restricted S/P problem, e > 1.
inline SMatrixPoint s_matrix_sp(const ModelParams& p, double e_over_w) {
    p.validate();
    if (!(e_over_w > 1.0))
        throw std::domain_error("s_matrix_sp: energy must lie above threshold (E/W > 1)");
    SMatrixPoint pt;
    pt.energy_over_w = e_over_w;
    pt.k1R = wavenumber_R(p.mass_ratio(), Channel::exterior(1), e_over_w).magnitude;
    pt.s = detail::sp_s_matrix(p.mass_ratio(), e_over_w);
    pt.delta = detail::reduce_phase(0.5 * std::arg(pt.s));
    const double sd = std::sin(pt.delta);
    pt.sin2_delta = sd * sd;
    return pt;
}

/// Make delta continuous along an ordered scan: the first point keeps its
/// [0, pi) value, later points take the branch closest to their predecessor.
inline void unwrap_phases(std::span<SMatrixPoint> points) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double prev = points[i - 1].delta;
        double step = detail::reduce_phase(points[i].delta - prev);
        if (step > 0.5 * std::numbers::pi) step -= std::numbers::pi;
        points[i].delta = prev + step;
    }
}

/// S/P phase shift over a grid of E/W values, unwrapped in grid order.
inline std::vector<SMatrixPoint> phase_scan(const ModelParams& p, std::span<const double> e_over_w,
                                            unsigned threads = 1) {
    auto pts = parallel_map(e_over_w.size(), threads,
                            [&](std::size_t i) { return s_matrix_sp(p, e_over_w[i]); });
    unwrap_phases(pts);
    return pts;
}

struct ResonanceScan {
    double min_over_w = 1.0 + 1e-6;
    double max_over_w = 1.2;
    int points = 2000;
    double tolerance = 1e-10; // in E/W
};

struct ResonanceReport {
    double peak_over_w = 0.0;
    double fwhm_over_w = 0.0;
    double half_max_low = 0.0;
    double half_max_high = 0.0;
    double sin2_at_peak = 0.0;
    double lifetime = 0.0;        // hbar / dE, in m_H R^2 / hbar
    double frequency_ratio = 0.0; // nu_R / nu_T at the peak
    double rotation_period = 0.0; // unit-spin hoop, in m_H R^2 / hbar
    double lifetime_over_rotation = 0.0;
};

namespace detail {

template <typename F>
double golden_maximum(F&& f, double a, double b, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Root of g on [a, b] given opposite signs at the ends.
template <typename G>
double bisect(G&& g, double a, double b, double tol) {
    double ga = g(a);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if ((gm < 0) == (ga < 0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace detail

/// Locates the maximum of sin^2(delta) on the scan window by golden-section
/// refinement of the best grid bracket, then the half-maximum crossings by
/// bisection. Throws SolverError if the window holds no interior peak or
/// either crossing.
inline ResonanceReport find_resonance(const ModelParams& p, const ResonanceScan& scan = {}) {
    p.validate();
    if (!(scan.min_over_w > 1.0))
        throw std::domain_error("find_resonance: scan must start above threshold");
    if (!(scan.max_over_w > scan.min_over_w) || !(scan.max_over_w < 6.0))
        throw std::domain_error("find_resonance: scan must end above its start and below the F-wave threshold (6 W)");
    if (scan.points < 3) throw std::invalid_argument("find_resonance: need at least 3 scan points");

    const double ratio = p.mass_ratio();
    auto sin2 = [ratio](double e) {
        const double d = 0.5 * std::arg(detail::sp_s_matrix(ratio, e));
        const double s = std::sin(d);
        return s * s;
    };

    const Grid grid{scan.min_over_w, scan.max_over_w, scan.points, Spacing::linear};
    const std::vector<double> es = grid.values();
    std::vector<double> vals(es.size());
    std::transform(es.begin(), es.end(), vals.begin(), sin2);
    const auto best = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    if (best == 0 || best + 1 == es.size())
        throw SolverError("find_resonance: sin^2(delta) has no interior maximum in the scan window");

    ResonanceReport r;
    r.peak_over_w = detail::golden_maximum(sin2, es[best - 1], es[best + 1], scan.tolerance);
    r.sin2_at_peak = sin2(r.peak_over_w);

    auto half = [&](double e) { return sin2(e) - 0.5; };
    std::size_t lo = best;
    while (lo > 0 && vals[lo] >= 0.5) --lo;
    std::size_t hi = best;
    while (hi + 1 < es.size() && vals[hi] >= 0.5) ++hi;
    if (vals[lo] >= 0.5 || vals[hi] >= 0.5)
        throw SolverError("find_resonance: half-maximum crossing outside the scan window");
    const double bis_tol = std::min(scan.tolerance, 1e-13);
    r.half_max_low = detail::bisect(half, es[lo], r.peak_over_w, bis_tol);
    r.half_max_high = detail::bisect(half, r.peak_over_w, es[hi], bis_tol);
    r.fwhm_over_w = r.half_max_high - r.half_max_low;

    // W = 2 hbar^2 / (m_H R^2), so hbar / dE = 1 / (2 fwhm) in m_H R^2 / hbar.
    r.lifetime = 1.0 / (2.0 * r.fwhm_over_w);
    const Frequencies f = frequencies(p, r.peak_over_w);
    r.frequency_ratio = f.rotational / f.transit;
    r.rotation_period = rotation_period(p, 1) * p.inverse_time_unit();
    r.lifetime_over_rotation = r.lifetime / r.rotation_period;
    return r;
}

/// Ratio of the interior S-wave to the exterior P-wave logarithmic
/// derivative at r = R, both at threshold. At threshold the exterior P wave
/// is the zero-energy solution r^-2 with logarithmic derivative -2/R.
inline double log_derivative_ratio_at_threshold(const ModelParams& p) {
    p.validate();
    const double k0 = wavenumber_R(p.mass_ratio(), Channel::interior(0), 1.0).magnitude;
    const double interior = k0 / std::tan(k0) - 1.0;
    return interior / -2.0;
}

struct MismatchPoint {
    double energy_over_w = 0.0;
    double interior = 0.0; // R psi'/psi, interior S wave
    double exterior = 0.0; // R psi'/psi, evanescent exterior P wave
    double mismatch = 0.0; // interior - exterior
};

/// Interior-minus-exterior logarithmic-derivative mismatch below threshold,
/// with the exterior P wave decaying as k_1(kappa_1 r). A bound state would
/// show up as a zero of the mismatch.
inline std::vector<MismatchPoint> bound_state_scan(const ModelParams& p, std::span<const double> e_over_w) {
    p.validate();
    const double ratio = p.mass_ratio();
    std::vector<MismatchPoint> out;
    out.reserve(e_over_w.size());
    for (double e : e_over_w) {
        if (!(e > 0.0 && e < 1.0))
            throw std::domain_error("bound_state_scan: energies must lie strictly inside (0, W)");
        const double k0 = wavenumber_R(ratio, Channel::interior(0), e).magnitude;
        const double kappa = wavenumber_R(ratio, Channel::exterior(1), e).magnitude;
        MismatchPoint m;
        m.energy_over_w = e;
        if (k0 < 1e-4) {
            // j_0'/j_0 = -k^2 r / 3 + O(k^4)
            m.interior = -k0 * k0 / 3.0;
        } else {
            const RadialValue j0 = sph_j(0, k0);
            m.interior = k0 * j0.derivative / j0.value;
        }
        const RadialValue k1 = sph_k(1, kappa);
        m.exterior = kappa * k1.derivative / k1.value;
        m.mismatch = m.interior - m.exterior;
        out.push_back(m);
    }
    return out;
}

inline bool has_sign_change(std::span<const MismatchPoint> curve) {
    for (std::size_t i = 1; i < curve.size(); ++i)
        if ((curve[i].mismatch > 0) != (curve[i - 1].mismatch > 0) || curve[i].mismatch == 0.0) return true;
    return false;
}

} // namespace ahoop
