#include "ahoop/feasibility.hpp"
#include "ahoop/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ahoop;

TEST(Model, NaturalUnits) {
    const ModelParams p = ModelParams::natural();
    EXPECT_DOUBLE_EQ(p.moment_of_inertia(), 0.5);
    EXPECT_DOUBLE_EQ(p.threshold(), 2.0);
    EXPECT_DOUBLE_EQ(p.rotational_energy(3), 12.0);
    EXPECT_DOUBLE_EQ(p.mass_ratio(), 1.0);
    EXPECT_DOUBLE_EQ(p.reduced_mass(), 1.0);
}

TEST(Model, Validation) {
    EXPECT_THROW((ModelParams{1.0, -1.0, 1.0, infinite_mass}.validate()), std::invalid_argument);
    EXPECT_THROW((ModelParams{1.0, 1.0, 0.0, infinite_mass}.validate()), std::invalid_argument);
    EXPECT_THROW((ModelParams{0.0, 1.0, 1.0, infinite_mass}.validate()), std::invalid_argument);
    EXPECT_THROW((ModelParams{1.0, 1.0, 1.0, 0.0}.validate()), std::invalid_argument);
}

TEST(Model, ChannelParity) {
    EXPECT_THROW(Channel::interior(1), std::invalid_argument);
    EXPECT_THROW(Channel::exterior(2), std::invalid_argument);
    EXPECT_DOUBLE_EQ(Channel::exterior(1).rotational_energy_over_w(), 1.0);
}

TEST(Model, WavenumberPartition) {
    const ModelParams p = ModelParams::natural();
    // At E/W = 1.5 the P channel has (k_1 R)^2 = 2 (2*1.5 - 2) = 2.
    const auto k1 = wavenumber_R(1.0, Channel::exterior(1), 1.5);
    EXPECT_EQ(k1.kind, WaveKind::propagating);
    EXPECT_NEAR(k1.magnitude, std::sqrt(2.0), 1e-15);
    const auto k3 = wavenumber_R(1.0, Channel::exterior(3), 1.5);
    EXPECT_EQ(k3.kind, WaveKind::evanescent);
    EXPECT_NEAR(k3.magnitude, std::sqrt(2.0 * 9.0), 1e-14);
    // Absolute-energy form agrees.
    EXPECT_NEAR(wavenumber(p, Channel::exterior(1), 3.0).magnitude, std::sqrt(2.0), 1e-15);
    // Large-k limit of k_n^2 R^2 + 2 n(n+1) = k_1^2 R^2 + 4 (in natural units, infinite mass).
    const double e = 1e4;
    const double kn = wavenumber_R(1.0, Channel::interior(4), e).magnitude;
    const double kk = wavenumber_R(1.0, Channel::exterior(1), e).magnitude;
    EXPECT_NEAR(kn * kn + 2 * 20, kk * kk + 4, 1e-9);
}

TEST(Model, UnitCovariance) {
    // The same physical hoop in SI and natural units gives identical k R.
    const FeasibilityReport hoop = estimate_feasibility({});
    const ModelParams si_p = ModelParams::si_units(hoop.hoop_radius, hoop.hoop_mass);
    const double e = 1.37;
    const double k_si = wavenumber(si_p, Channel::exterior(1), e * si_p.threshold()).magnitude * si_p.hoop_radius;
    EXPECT_NEAR(k_si, wavenumber_R(1.0, Channel::exterior(1), e).magnitude, 1e-12);
}

TEST(Model, EffectivePotential) {
    const ModelParams p = ModelParams::natural();
    const double w = p.threshold();
    EXPECT_DOUBLE_EQ(effective_potential(p, Channel::interior(0), 0.3), 0.0);
    EXPECT_NEAR(effective_potential(p, Channel::exterior(1), 1.0) / w, 1.5, 1e-15);
    EXPECT_NEAR(effective_potential(p, Channel::exterior(1), 1e6) / w, 1.0, 1e-12);
    EXPECT_THROW(effective_potential(p, Channel::exterior(1), 0.5), std::invalid_argument);
    EXPECT_THROW(effective_potential(p, Channel::interior(0), 1.5), std::invalid_argument);
}

TEST(Model, FrequenciesAndRotation) {
    const ModelParams p = ModelParams::natural();
    const Frequencies f = frequencies(p, 1.5);
    // nu_T = sqrt(2 (E - W)) / 2 with E - W = 1; nu_R = 2 / (2 pi).
    EXPECT_NEAR(f.transit, std::sqrt(2.0) / 2.0, 1e-15);
    EXPECT_NEAR(f.rotational, 1.0 / std::numbers::pi, 1e-15);
    EXPECT_THROW(frequencies(p, 0.9), std::domain_error);
    EXPECT_NEAR(frequencies(p, 0.9, TransitConvention::total_energy).transit, std::sqrt(2 * 1.8) / 2, 1e-15);
    EXPECT_NEAR(rotation_period(p), std::numbers::pi / std::sqrt(2.0), 1e-15);
}
