#pragma once

// Variational estimates of a would-be bound state below threshold.
//
// Trial functions are built from an interior part sum_n c_n g_n(r) P_n(mu)
// (even n) and an exterior part eps(mu) sum_l a_l F_l(r) P_l(mu) (odd l).
// Static-hoop matching fixes each exterior amplitude as the projection of
// the interior boundary value onto P_l:
//
//     a_l F_l(R) = (2l+1) sum_n c_n g_n(R) O_{n,l}
//
// The energy functional sums, channel by channel, the radial kinetic,
// centrifugal and hoop-rotation terms
//
//     int r^2 dr [ hbar^2/2m_mu |f'|^2 + hbar^2 l(l+1)/(2 m_mu r^2) |f|^2
//                  + hbar^2 l(l+1)/(m_H R^2) |f|^2 ] * 2/(2l+1)
//
// and every reported energy is the Rayleigh quotient <H>/<1> in units of W.

#include "ahoop/errors.hpp"
#include "ahoop/model.hpp"
#include "ahoop/parallel.hpp"
#include "ahoop/quadrature.hpp"
#include "ahoop/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace ahoop {

// ---------------------------------------------------------------------------
// Simple trial: constant inside, a_l (R/r)^{l+1} P_l outside.
// ---------------------------------------------------------------------------

struct SimpleTrialChannel {
    int l = 0;
    double amplitude = 0.0;       // a_l = (2l+1) O_{0,l}
    double radial_gradient = 0.0; // energies in units of W * R^3, angular weight included
    double centrifugal = 0.0;
    double rotation = 0.0;
    double energy = 0.0;
    double norm = 0.0; // units of R^3
    double cumulative_energy = 0.0;
    double cumulative_norm = 0.0; // includes the interior constant
    double quotient_over_w = 0.0; // cumulative_energy / cumulative_norm
};

struct SimpleTrialResult {
    double interior_norm = 0.0;
    std::vector<SimpleTrialChannel> channels; // odd l = 1, 3, ..., L
};

/// Closed-form channel contributions of the simple trial function.
inline SimpleTrialResult simple_trial_energy(const ModelParams& p, int L) {
    p.validate();
    if (L < 1 || L % 2 != 1) throw std::invalid_argument("simple_trial_energy: L must be odd and positive");
    const double mu = p.mass_ratio();
    constexpr double w_natural = 2.0;

    SimpleTrialResult out;
    out.interior_norm = 2.0 / 3.0; // int_0^1 r^2 dr times angular weight 2
    double cum_e = 0.0;
    double cum_n = out.interior_norm;
    for (int l = 1; l <= L; l += 2) {
        SimpleTrialChannel c;
        c.l = l;
        c.amplitude = (2.0 * l + 1.0) * overlap(0, l);
        const double weight = 2.0 / (2.0 * l + 1.0) * c.amplitude * c.amplitude;
        const double l2 = l * (l + 1.0);
        // f = r^{-(l+1)} on [1, inf): int r^2 f'^2 = (l+1)^2/(2l+1), int f^2 = 1/(2l+1),
        // int r^2 f^2 = 1/(2l-1).
        c.radial_gradient = weight * (l + 1.0) * (l + 1.0) / (2.0 * mu * (2.0 * l + 1.0)) / w_natural;
        c.centrifugal = weight * l2 / (2.0 * mu * (2.0 * l + 1.0)) / w_natural;
        c.rotation = weight * l2 / (2.0 * l - 1.0) / w_natural;
        c.energy = c.radial_gradient + c.centrifugal + c.rotation;
        c.norm = weight / (2.0 * l - 1.0);
        cum_e += c.energy;
        cum_n += c.norm;
        c.cumulative_energy = cum_e;
        c.cumulative_norm = cum_n;
        c.quotient_over_w = cum_e / cum_n;
        out.channels.push_back(c);
    }
    return out;
}

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
inline LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit_line: abscissae are all equal");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        ss_res += r * r;
    }
    f.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

// ---------------------------------------------------------------------------
// Bessel trial
// ---------------------------------------------------------------------------

/// Radial integrals of one channel for a radial function scaled to 1 at R,
/// with the angular weight 2/(2l+1) folded in. Energy in units of W.
struct ChannelIntegrals {
    double norm = 0.0;
    double energy = 0.0;
};

namespace detail {

inline constexpr double radial_rel_tol = 1e-12;

/// Interior channel n at construction energy e: j_0(k r) for n = 0, the
/// evanescent i_n(kappa r) otherwise.
inline ChannelIntegrals interior_integrals(double mu, int n, double e) {
    const ChannelWavenumber kw = wavenumber_R(mu, Channel::interior(n), e);
    const double k = kw.magnitude;
    const bool oscillating = kw.kind == WaveKind::propagating;
    auto radial = [&](double r) -> RadialValue {
        const double x = k * r;
        if (oscillating) {
            const RadialValue v = sph_j(n, x);
            return {v.value, k * v.derivative};
        }
        const RadialValue v = sph_i(n, x);
        return {v.value, k * v.derivative};
    };
    const double at_r = radial(1.0).value;
    const double l2 = n * (n + 1.0);
    auto norm_f = [&](double r) {
        const double g = radial(r).value / at_r;
        return r * r * g * g;
    };
    auto energy_f = [&](double r) {
        const RadialValue v = radial(r);
        const double g = v.value / at_r;
        const double dg = v.derivative / at_r;
        return r * r * (dg * dg / (2.0 * mu) + l2 * g * g / (2.0 * mu * r * r) + l2 * g * g);
    };
    const double weight = 2.0 / (2.0 * n + 1.0);
    return {weight * integrate_adaptive(norm_f, 0.0, 1.0, radial_rel_tol).value,
            weight * integrate_adaptive(energy_f, 0.0, 1.0, radial_rel_tol).value / 2.0};
}

/// Exterior channel l: k_l(kappa r) / k_l(kappa R), integrated over
/// [R, inf) through t = R / r on (0, 1].
inline ChannelIntegrals exterior_integrals(double mu, int l, double e) {
    const ChannelWavenumber kw = wavenumber_R(mu, Channel::exterior(l), e);
    if (kw.kind != WaveKind::evanescent || kw.magnitude == 0.0)
        throw std::domain_error("exterior trial channel must be evanescent (e < 1)");
    const double kappa = kw.magnitude;
    const RadialValue at = sph_k(l, kappa);
    const double l2 = l * (l + 1.0);
    auto radial = [&](double r) -> RadialValue {
        const double x = kappa * r;
        if (x > 700.0) return {0.0, 0.0};
        const RadialValue v = sph_k(l, x);
        return {v.value / at.value, kappa * v.derivative / at.value};
    };
    auto norm_f = [&](double t) {
        const double r = 1.0 / t;
        const double f = radial(r).value;
        return r * r * f * f * r * r;
    };
    auto energy_f = [&](double t) {
        const double r = 1.0 / t;
        const RadialValue v = radial(r);
        const double dens = v.derivative * v.derivative / (2.0 * mu) + l2 * v.value * v.value / (2.0 * mu * r * r) +
                            l2 * v.value * v.value;
        return r * r * dens * r * r;
    };
    const double weight = 2.0 / (2.0 * l + 1.0);
    return {weight * integrate_adaptive(norm_f, 0.0, 1.0, radial_rel_tol).value,
            weight * integrate_adaptive(energy_f, 0.0, 1.0, radial_rel_tol).value / 2.0};
}

} // namespace detail

struct TrialFunction {
    double construction_energy = 0.0; // e = E/W used for all trial wavenumbers
    std::vector<double> interior;     // c_n, boundary value of channel n = 2j at R
    std::vector<double> exterior;     // a_l, boundary value of channel l = 2j+1 at R
};

struct QuotientResult {
    double energy_over_w = 0.0;
    TrialFunction trial;
};

/// Minimum Rayleigh quotient over the interior amplitudes for fixed
/// truncation (N, L) and construction energy e in (0, 1).
inline QuotientResult bessel_trial_quotient(const ModelParams& p, int N, int L, double e) {
    p.validate();
    if (N < 0 || N % 2 != 0) throw std::invalid_argument("bessel_trial: N must be even and non-negative");
    if (L < 1 || L % 2 != 1) throw std::invalid_argument("bessel_trial: L must be odd and positive");
    if (!(e > 0.0 && e < 1.0)) throw std::domain_error("bessel_trial: construction energy must lie in (0, W)");
    const double mu = p.mass_ratio();
    const int dim = N / 2 + 1;

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const ChannelIntegrals ci = detail::interior_integrals(mu, 2 * j, e);
        H(j, j) += ci.energy;
        M(j, j) += ci.norm;
    }
    Eigen::MatrixXd projection(L / 2 + 1, dim);
    for (int l = 1; l <= L; l += 2) {
        const ChannelIntegrals ce = detail::exterior_integrals(mu, l, e);
        Eigen::VectorXd v(dim);
        for (int j = 0; j < dim; ++j) v(j) = (2.0 * l + 1.0) * overlap(2 * j, l);
        projection.row(l / 2) = v.transpose();
        H += ce.energy * v * v.transpose();
        M += ce.norm * v * v.transpose();
    }

    if (Eigen::LLT<Eigen::MatrixXd>(M).info() != Eigen::Success)
        throw SolverError("bessel_trial: norm matrix is not positive definite");
    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, M);
    if (solver.info() != Eigen::Success) throw SolverError("bessel_trial: generalized eigensolver failed");

    QuotientResult out;
    out.energy_over_w = solver.eigenvalues()(0);
    Eigen::VectorXd c = solver.eigenvectors().col(0);
    if (c(0) < 0) c = -c;
    const Eigen::VectorXd a = projection * c;
    out.trial.construction_energy = e;
    out.trial.interior.assign(c.data(), c.data() + c.size());
    out.trial.exterior.assign(a.data(), a.data() + a.size());
    return out;
}

struct ConstructionEnergyScan {
    double min = 0.05;
    double max = 1.0 - 1e-6;
    int coarse_points = 12;
    double tolerance = 1e-7;
};

struct VariationalResult {
    int N = 0;
    int L = 1;
    double construction_energy = 0.0; // e* at the minimum
    double energy_over_w = 0.0;       // minimized Rayleigh quotient
    TrialFunction trial;
};

/// Minimizes the Rayleigh quotient over the interior amplitudes and the
/// construction energy e: a coarse scan picks the best bracket, golden
/// section refines it, and the best evaluated point is returned.
inline VariationalResult bessel_trial_minimize(const ModelParams& p, int N, int L,
                                               const ConstructionEnergyScan& scan = {}) {
    if (!(scan.min > 0.0 && scan.max < 1.0 && scan.min < scan.max))
        throw std::domain_error("bessel_trial_minimize: e-scan must lie inside (0, 1)");
    if (scan.coarse_points < 3) throw std::invalid_argument("bessel_trial_minimize: need >= 3 coarse points");

    VariationalResult best;
    best.N = N;
    best.L = L;
    best.energy_over_w = std::numeric_limits<double>::infinity();
    auto eval = [&](double e) {
        const QuotientResult q = bessel_trial_quotient(p, N, L, e);
        if (q.energy_over_w < best.energy_over_w) {
            best.energy_over_w = q.energy_over_w;
            best.construction_energy = e;
            best.trial = q.trial;
        }
        return q.energy_over_w;
    };

    std::vector<double> es(scan.coarse_points), vals(scan.coarse_points);
    for (int i = 0; i < scan.coarse_points; ++i) {
        es[i] = scan.min + (scan.max - scan.min) * i / (scan.coarse_points - 1.0);
        vals[i] = eval(es[i]);
    }
    const auto i = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    double a = es[std::max(0, i - 1)];
    double b = es[std::min(scan.coarse_points - 1, i + 1)];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = eval(c), fd = eval(d);
    while (b - a > scan.tolerance) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - invphi * (b - a);
            fc = eval(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + invphi * (b - a);
            fd = eval(d);
        }
    }
    return best;
}

struct VariationalGrid {
    std::vector<int> N{0, 2, 4, 6, 8, 10, 12};
    std::vector<int> L{11, 15, 21, 31, 41};
    ConstructionEnergyScan scan;
};

/// Runs bessel_trial_minimize over every (N, L) pair of the grid with
/// L >= N + 1, in (N, L) order.
inline std::vector<VariationalResult> variational_sweep(const ModelParams& p, const VariationalGrid& grid,
                                                        unsigned threads = 1) {
    std::vector<std::pair<int, int>> tasks;
    for (int n : grid.N)
        for (int l : grid.L)
            if (l >= n + 1) tasks.emplace_back(n, l);
    return parallel_map(tasks.size(), threads, [&](std::size_t i) {
        return bessel_trial_minimize(p, tasks[i].first, tasks[i].second, grid.scan);
    });
}

// ---------------------------------------------------------------------------
// Extrapolation
// ---------------------------------------------------------------------------

struct LogFit {
    int N = 0;
    double alpha = 0.0; // fitted E at L = reference_L
    double beta = 0.0;  // slope in ln L
    double r_squared = 0.0;
    int points = 0;
};

struct ExtrapolationOptions {
    int reference_L = 0; // 0: largest L present in the results
    int min_fit_N = 4;   // smallest N entering the 1/N extrapolation
    double min_r_squared = 0.9;
};

struct ExtrapolationReport {
    std::vector<LogFit> fits;
    int reference_L = 0;
    double alpha_limit = 0.0;     // N -> inf value at reference_L: the reported bound
    double beta_limit = 0.0;      // N -> inf slope in ln L
    double intercept_limit = 0.0; // N -> inf value continued to L = 1
    double alpha_r_squared = 0.0;
    double beta_r_squared = 0.0;
    std::vector<std::string> warnings;

    double bound_over_w() const { return alpha_limit; }
    bool fit_ok() const { return warnings.empty(); }
};

/// For each N fits E(N, L) = alpha_N + beta_N ln(L / L_ref); then extrapolates
/// alpha_N and beta_N linearly in 1/N to N -> inf. Poor fits (R^2 below the
/// threshold) are listed in warnings.
inline ExtrapolationReport extrapolate_bound(std::span<const VariationalResult> results,
                                             const ExtrapolationOptions& opt = {}) {
    ExtrapolationReport rep;
    int max_L = 0;
    std::vector<int> Ns;
    for (const auto& r : results) {
        max_L = std::max(max_L, r.L);
        if (std::find(Ns.begin(), Ns.end(), r.N) == Ns.end()) Ns.push_back(r.N);
    }
    std::sort(Ns.begin(), Ns.end());
    rep.reference_L = opt.reference_L > 0 ? opt.reference_L : max_L;
    const double ln_ref = std::log(static_cast<double>(rep.reference_L));

    std::vector<double> inv_n, alphas, betas;
    for (int n : Ns) {
        std::vector<double> x, y;
        for (const auto& r : results)
            if (r.N == n) {
                x.push_back(std::log(static_cast<double>(r.L)) - ln_ref);
                y.push_back(r.energy_over_w);
            }
        if (x.size() < 2) continue;
        const LinearFit f = fit_line(x, y);
        rep.fits.push_back({n, f.intercept, f.slope, f.r_squared, static_cast<int>(x.size())});
        if (x.size() > 2 && f.r_squared < opt.min_r_squared)
            rep.warnings.push_back("ln L fit at N=" + std::to_string(n) + " has R^2 " + std::to_string(f.r_squared));
        if (n > 0 && n >= opt.min_fit_N) {
            inv_n.push_back(1.0 / n);
            alphas.push_back(f.intercept);
            betas.push_back(f.slope);
        }
    }
    if (inv_n.size() < 2)
        throw SolverError("extrapolate_bound: need ln L fits for at least two N >= " + std::to_string(opt.min_fit_N));
    const LinearFit fa = fit_line(inv_n, alphas);
    const LinearFit fb = fit_line(inv_n, betas);
    rep.alpha_limit = fa.intercept;
    rep.beta_limit = fb.intercept;
    rep.alpha_r_squared = fa.r_squared;
    rep.beta_r_squared = fb.r_squared;
    rep.intercept_limit = rep.alpha_limit - rep.beta_limit * ln_ref;
    if (inv_n.size() > 2 && fa.r_squared < opt.min_r_squared)
        rep.warnings.push_back("1/N extrapolation of alpha has R^2 " + std::to_string(fa.r_squared));
    return rep;
}

} // namespace ahoop
