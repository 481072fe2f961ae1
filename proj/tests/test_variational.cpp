#include "ahoop/variational.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ahoop;

TEST(SimpleTrial, ProjectedAmplitude) {
    const auto r = simple_trial_energy(ModelParams::natural(), 5);
    EXPECT_NEAR(r.channels[0].amplitude, 1.5, 1e-15);
    EXPECT_NEAR(r.channels[1].amplitude, -7.0 / 8.0, 1e-15);
    EXPECT_NEAR(r.interior_norm, 2.0 / 3.0, 1e-15);
    EXPECT_THROW(simple_trial_energy(ModelParams::natural(), 4), std::invalid_argument);
}

TEST(SimpleTrial, FirstChannelByQuadrature) {
    // f = 1.5 r^-2 outside, 1 inside; weight 2/3 for l = 1, 2 for the interior.
    const auto r = simple_trial_energy(ModelParams::natural(), 1);
    const auto tail = [](auto g) {
        return boost::math::quadrature::exp_sinh<double>().integrate(g, 1.0, std::numeric_limits<double>::infinity());
    };
    const double a = 1.5, w = 2.0 / 3.0;
    const double grad = w * tail([&](double x) { return x * x * std::pow(2 * a / (x * x * x), 2) / 2.0; });
    const double cent = w * tail([&](double x) { return 2.0 * std::pow(a / (x * x), 2) / 2.0; });
    const double rot = w * tail([&](double x) { return x * x * 2.0 * std::pow(a / (x * x), 2); });
    const double norm = w * tail([&](double x) { return x * x * std::pow(a / (x * x), 2); });
    const auto& c = r.channels[0];
    EXPECT_NEAR(c.radial_gradient, grad / 2.0, 1e-10);
    EXPECT_NEAR(c.centrifugal, cent / 2.0, 1e-10);
    EXPECT_NEAR(c.rotation, rot / 2.0, 1e-10);
    EXPECT_NEAR(c.norm, norm, 1e-10);
    EXPECT_NEAR(c.quotient_over_w, (grad + cent + rot) / 2.0 / (norm + 2.0 / 3.0), 1e-10);
}

TEST(SimpleTrial, LogarithmicDivergence) {
    const auto r = simple_trial_energy(ModelParams::natural(), 201);
    // l times the channel energy levels off, so the series diverges like ln L.
    const auto& c1 = r.channels[r.channels.size() / 2];
    const auto& c2 = r.channels.back();
    EXPECT_NEAR(c1.l * c1.energy, c2.l * c2.energy, 0.02 * c2.l * c2.energy);
    std::vector<double> x, y;
    for (const auto& c : r.channels)
        if (c.l >= 21) {
            x.push_back(std::log(static_cast<double>(c.l)));
            y.push_back(c.cumulative_energy);
        }
    const LinearFit f = fit_line(x, y);
    EXPECT_GT(f.slope, 0);
    EXPECT_GT(f.r_squared, 0.9);
}

TEST(LinearFitTest, ExactLine) {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const LinearFit f = fit_line(x, y);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-14);
    EXPECT_THROW(fit_line(std::vector<double>{1, 1}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(BesselTrial, ChannelIntegralsObeyGreenIdentity) {
    // For a radial solution at energy 2e (natural units) scaled to 1 at R, the
    // channel energy is e * norm +/- f'(R) / (4 mu) (units of W), the sign set
    // by the outward normal of the region.
    const double mu = 1.0;
    for (double e : {0.3, 0.8, 0.999}) {
        for (int n : {0, 2, 6, 12}) {
            const auto ci = detail::interior_integrals(mu, n, e);
            const auto kw = wavenumber_R(mu, Channel::interior(n), e);
            const RadialValue v = n == 0 ? sph_j(0, kw.magnitude) : sph_i(n, kw.magnitude);
            const double slope = kw.magnitude * v.derivative / v.value;
            const double w = 2.0 / (2.0 * n + 1.0);
            EXPECT_NEAR(ci.energy, e * ci.norm + w * slope / (4 * mu), 1e-10 * std::abs(ci.energy)) << n << " " << e;
        }
        for (int l : {1, 3, 11, 41}) {
            const auto ce = detail::exterior_integrals(mu, l, e);
            const double kappa = wavenumber_R(mu, Channel::exterior(l), e).magnitude;
            const RadialValue v = sph_k(l, kappa);
            const double slope = kappa * v.derivative / v.value;
            const double w = 2.0 / (2.0 * l + 1.0);
            EXPECT_NEAR(ce.energy, e * ce.norm - w * slope / (4 * mu), 1e-10 * std::abs(ce.energy)) << l << " " << e;
        }
    }
}

TEST(BesselTrial, TwoFunctionTrialByIndependentQuadrature) {
    // N = 0, L = 1 at e -> 1-: j_0(k r) inside, k_1(kappa r) outside, with
    // a_1 = 3 O_{0,1} = 3/2 relative to the interior boundary value.
    const double e = 1.0 - 1e-6;
    const double k = std::sqrt(4.0 * e), kappa = std::sqrt(4.0 - 4.0 * e);
    const auto kf = [](double x) { return std::sqrt(2 / (std::numbers::pi * x)) * boost::math::cyl_bessel_k(1.5, x); };
    const auto kfp = [&](double x) {
        return -std::sqrt(2 / (std::numbers::pi * x)) * (boost::math::cyl_bessel_k(0.5, x) + boost::math::cyl_bessel_k(2.5, x)) / 2.0 -
               kf(x) / (2.0 * x);
    };
    const double j0R = boost::math::sph_bessel(0, k), kR = kf(kappa);
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    const double in_norm = 2.0 * ts.integrate([&](double r) { return std::pow(r * boost::math::sph_bessel(0, k * r) / j0R, 2); }, 0.0, 1.0);
    const double in_energy = 2.0 * ts.integrate([&](double r) {
        return 0.5 * std::pow(r * k * boost::math::sph_bessel_prime(0, k * r) / j0R, 2);
    }, 0.0, 1.0);
    const double a = 1.5, w = 2.0 / 3.0;
    const double inf = std::numeric_limits<double>::infinity();
    const double ex_norm = w * a * a * es.integrate([&](double r) { return std::pow(r * kf(kappa * r) / kR, 2); }, 1.0, inf);
    const double ex_energy = w * a * a * es.integrate([&](double r) {
        const double f = kf(kappa * r) / kR, fp = kappa * kfp(kappa * r) / kR;
        return r * r * (0.5 * fp * fp + f * f / (r * r) + 2.0 * f * f);
    }, 1.0, inf);
    const double want = (in_energy + ex_energy) / (in_norm + ex_norm) / 2.0;
    const auto q = bessel_trial_quotient(ModelParams::natural(), 0, 1, e);
    EXPECT_NEAR(q.energy_over_w, want, 1e-8);
    ASSERT_EQ(q.trial.exterior.size(), 1u);
    EXPECT_NEAR(q.trial.exterior[0] / q.trial.interior[0], 1.5, 1e-14);
}

TEST(BesselTrial, MonotoneInBasisSize) {
    const ModelParams p = ModelParams::natural();
    for (double e : {0.5, 0.9, 1.0 - 1e-6})
        for (int L : {13, 21}) {
            double prev = std::numeric_limits<double>::infinity();
            for (int N = 0; N <= 12; N += 2) {
                const double v = bessel_trial_quotient(p, N, L, e).energy_over_w;
                EXPECT_LE(v, prev + 1e-12) << "N=" << N << " L=" << L << " e=" << e;
                prev = v;
            }
        }
}

TEST(BesselTrial, GrowsWithL) {
    const ModelParams p = ModelParams::natural();
    double prev = 0.0;
    for (int L : {5, 11, 21, 41}) {
        const double v = bessel_trial_minimize(p, 4, L).energy_over_w;
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(BesselTrial, RejectsBadInput) {
    const ModelParams p = ModelParams::natural();
    EXPECT_THROW(bessel_trial_quotient(p, 1, 3, 0.5), std::invalid_argument);
    EXPECT_THROW(bessel_trial_quotient(p, 2, 4, 0.5), std::invalid_argument);
    EXPECT_THROW(bessel_trial_quotient(p, 2, 3, 1.0), std::domain_error);
    EXPECT_THROW(bessel_trial_minimize(p, 2, 3, {0.5, 1.0, 5, 1e-6}), std::domain_error);
}

TEST(Extrapolation, SyntheticLogLinearData) {
    // E = (a + b/N) + (c + d/N) ln L, exactly.
    const double a = 1.14, b = 0.3, c = 0.002, d = 0.05;
    std::vector<VariationalResult> rs;
    for (int N : {2, 4, 6, 8, 10, 12})
        for (int L : {11, 15, 21, 31, 41}) {
            VariationalResult r;
            r.N = N;
            r.L = L;
            r.energy_over_w = a + b / N + (c + d / N) * std::log(L);
            rs.push_back(r);
        }
    const auto rep = extrapolate_bound(rs, {1, 4, 0.9});
    EXPECT_NEAR(rep.bound_over_w(), a, 1e-10);
    EXPECT_NEAR(rep.beta_limit, c, 1e-10);
    EXPECT_TRUE(rep.fit_ok());
    const auto rep41 = extrapolate_bound(rs);
    EXPECT_EQ(rep41.reference_L, 41);
    EXPECT_NEAR(rep41.bound_over_w(), a + c * std::log(41.0), 1e-10);
    EXPECT_NEAR(rep41.intercept_limit, a, 1e-10);
}

TEST(Extrapolation, ReportsPoorFits) {
    std::vector<VariationalResult> rs;
    const double noise[] = {0.3, -0.2, 0.25, -0.3, 0.1};
    for (int N : {4, 6, 8}) {
        int i = 0;
        for (int L : {11, 15, 21, 31, 41}) {
            VariationalResult r;
            r.N = N;
            r.L = L;
            r.energy_over_w = 1.2 + noise[i++];
            rs.push_back(r);
        }
    }
    EXPECT_FALSE(extrapolate_bound(rs).fit_ok());
    std::vector<VariationalResult> one_n(rs.begin(), rs.begin() + 5);
    EXPECT_THROW(extrapolate_bound(one_n), SolverError);
}

TEST(Extrapolation, DefaultGridBound) {
    const ModelParams p = ModelParams::natural();
    const auto results = variational_sweep(p, {}, 2);
    for (const auto& r : results) EXPECT_GT(r.energy_over_w, 1.0) << "N=" << r.N << " L=" << r.L;
    const auto rep = extrapolate_bound(results);
    EXPECT_TRUE(rep.fit_ok());
    EXPECT_GT(rep.bound_over_w(), 1.10);
    EXPECT_LT(rep.bound_over_w(), 1.18);
    // Slopes shrink as N grows.
    for (std::size_t i = 1; i < rep.fits.size(); ++i) EXPECT_LT(rep.fits[i].beta, rep.fits[i - 1].beta);
}
