#include "ahoop/sp_scattering.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace ahoop;

namespace {

// S from the logarithmic-derivative condition with Boost's Bessel functions.
std::complex<double> boost_s(double e) {
    const double k0 = std::sqrt(4.0 * e);
    const double k1 = std::sqrt(4.0 * e - 4.0);
    const double L = k0 * boost::math::sph_bessel_prime(0, k0) / boost::math::sph_bessel(0, k0);
    const std::complex<double> h1(boost::math::sph_bessel(1, k1), boost::math::sph_neumann(1, k1));
    const std::complex<double> h1p(boost::math::sph_bessel_prime(1, k1), boost::math::sph_neumann_prime(1, k1));
    const std::complex<double> h2 = std::conj(h1), h2p = std::conj(h1p);
    return -(k1 * h2p - L * h2) / (k1 * h1p - L * h1);
}

} // namespace

TEST(SpScattering, MatchesIndependentBesselOracle) {
    const ModelParams p = ModelParams::natural();
    for (double e : {1.0001, 1.005, 1.0126, 1.05, 1.5, 3.0, 5.9})
        EXPECT_LT(std::abs(s_matrix_sp(p, e).s - boost_s(e)), 1e-12) << e;
}

TEST(SpScattering, Unitarity) {
    const ModelParams p = ModelParams::natural();
    for (int i = 0; i < 5000; ++i) {
        const double e = 1.0 + 1e-9 + (6.0 - 2e-9 - 1.0) * i / 4999.0;
        EXPECT_NEAR(std::abs(s_matrix_sp(p, e).s), 1.0, 1e-12) << e;
    }
}

TEST(SpScattering, RejectsBelowThreshold) {
    EXPECT_THROW(s_matrix_sp(ModelParams::natural(), 1.0), std::domain_error);
}

TEST(SpScattering, ThresholdRatio) {
    const double r = log_derivative_ratio_at_threshold(ModelParams::natural());
    EXPECT_NEAR(r, (1.0 - 2.0 / std::tan(2.0)) / 2.0, 1e-12);
    EXPECT_NEAR(r, 0.958, 1e-3);
}

TEST(SpScattering, PhaseUnwrapRemovesJumps) {
    const ModelParams p = ModelParams::natural();
    const Grid g{1.001, 1.03, 400, Spacing::linear};
    const auto vals = g.values();
    const auto pts = phase_scan(p, vals);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(std::abs(pts[i].delta - pts[i - 1].delta), 0.5);
    // Through the resonance delta climbs past pi/2.
    EXPECT_LT(pts.front().delta, std::numbers::pi / 2);
    EXPECT_GT(pts.back().delta, std::numbers::pi / 2);
    // Unwrapped values differ from the reduced ones by multiples of pi.
    for (const auto& pt : pts) {
        const double k = (pt.delta - detail::reduce_phase(pt.delta)) / std::numbers::pi;
        EXPECT_NEAR(k, std::round(k), 1e-12);
    }
}

TEST(SpScattering, PhaseScanIndependentOfThreads) {
    const ModelParams p = ModelParams::natural();
    const auto vals = Grid{1.0001, 2.0, 301, Spacing::linear}.values();
    const auto a = phase_scan(p, vals, 1);
    const auto b = phase_scan(p, vals, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].s, b[i].s);
        EXPECT_EQ(a[i].delta, b[i].delta);
    }
}

TEST(SpScattering, Resonance) {
    const ResonanceReport r = find_resonance(ModelParams::natural());
    EXPECT_NEAR(r.peak_over_w, 1.0126, 5e-4);
    EXPECT_NEAR(r.sin2_at_peak, 1.0, 1e-9);
    EXPECT_GT(r.lifetime, 120);
    EXPECT_LT(r.lifetime, 165);
    EXPECT_NEAR(r.lifetime * 2.0 * r.fwhm_over_w, 1.0, 1e-15);
    EXPECT_GT(r.frequency_ratio, 2.5);
    EXPECT_LT(r.frequency_ratio, 3.1);
    EXPECT_GT(r.lifetime_over_rotation, 50);
    EXPECT_LT(r.lifetime_over_rotation, 300);
    EXPECT_LT(r.half_max_low, r.peak_over_w);
    EXPECT_GT(r.half_max_high, r.peak_over_w);
}

TEST(SpScattering, ResonanceErrors) {
    const ModelParams p = ModelParams::natural();
    EXPECT_THROW(find_resonance(p, {1.05, 1.2, 200, 1e-10}), SolverError);
    EXPECT_THROW(find_resonance(p, {0.9, 1.2, 200, 1e-10}), std::domain_error);
    EXPECT_THROW(find_resonance(p, {1.01, 7.0, 200, 1e-10}), std::domain_error);
}

TEST(SpScattering, NoBoundState) {
    const auto es = Grid{0.05, 0.999, 2000, Spacing::linear}.values();
    const auto curve = bound_state_scan(ModelParams::natural(), es);
    EXPECT_FALSE(has_sign_change(curve));
    // Exterior log derivative at threshold tends to -2 (zero-energy r^-2).
    const double e = 1.0 - 1e-10;
    const auto tail = bound_state_scan(ModelParams::natural(), std::span<const double>(&e, 1));
    EXPECT_NEAR(tail[0].exterior, -2.0, 1e-4);
    EXPECT_THROW(bound_state_scan(ModelParams::natural(), std::vector<double>{1.2}), std::domain_error);
}

TEST(SpScattering, SignChangeDetector) {
    std::vector<MismatchPoint> c(3);
    c[0].mismatch = 1.0;
    c[1].mismatch = 0.5;
    c[2].mismatch = 0.1;
    EXPECT_FALSE(has_sign_change(c));
    c[2].mismatch = -0.1;
    EXPECT_TRUE(has_sign_change(c));
}
