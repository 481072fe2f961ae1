#pragma once

// Order-of-magnitude estimate for a nanotube hoop threaded by flux from a
// lead particle. A single-layer tube of n atoms around the minor
// circumference and N atoms around the hoop gives
//
//   R = N l_c / (2 pi),  m_H = N n m_c,  r_p = R / alpha,
//   m_p = rho (4/3) pi r_p^3,  beta = m_p / m_H,
//
// which fixes N. The resonance lifetime is then tau = 143 m_H R^2 / hbar,
// with m_H the hoop mass (infinitely heavy particle).

#include "ahoop/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ahoop {

struct FeasibilityParams {
    double alpha = 50.0; // R / r_p
    double beta = 50.0;  // m_p / m_H
    double n = 50.0;     // atoms around the minor circumference
    double carbon_mass = 12.0 * si::atomic_mass; // kg
    double bond_length = 1.5e-10;                // m
    double density = 1.1e4;                      // kg / m^3, lead
    double lifetime_coefficient = 143.0;         // tau in units of m_H R^2 / hbar

    void validate() const {
        for (double v : {alpha, beta, n, carbon_mass, bond_length, density, lifetime_coefficient})
            if (!(v > 0) || !std::isfinite(v))
                throw std::invalid_argument("feasibility: all parameters must be positive and finite");
    }
};

struct FeasibilityReport {
    double N = 0.0;              // atoms around the hoop
    double hoop_radius = 0.0;    // m
    double hoop_mass = 0.0;      // kg
    double particle_radius = 0.0; // m
    double particle_mass = 0.0;  // kg
    double lifetime = 0.0;       // s
    double temperature = 0.0;    // hbar^2 / (m_H R^2 k_B), K
};

/// Exponents of tau ~ alpha^a beta^b n^c and N ~ (alpha^3 beta n)^(1/2).
struct ScalingExponents {
    double tau_alpha = 4.5;
    double tau_beta = 1.5;
    double tau_n = 2.5;
    double N_alpha = 1.5;
    double N_beta = 0.5;
    double N_n = 0.5;
};

inline FeasibilityReport estimate_feasibility(const FeasibilityParams& f) {
    f.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    // beta = rho (4/3) pi (N l_c / (2 pi alpha))^3 / (N n m_c), solved for N.
    const double N2 = f.beta * f.n * f.carbon_mass * std::pow(two_pi * f.alpha, 3) /
                      (4.0 / 3.0 * std::numbers::pi * f.density * std::pow(f.bond_length, 3));
    FeasibilityReport r;
    r.N = std::sqrt(N2);
    r.hoop_radius = r.N * f.bond_length / two_pi;
    r.hoop_mass = r.N * f.n * f.carbon_mass;
    r.particle_radius = r.hoop_radius / f.alpha;
    r.particle_mass = f.density * 4.0 / 3.0 * std::numbers::pi * std::pow(r.particle_radius, 3);
    const double mr2 = r.hoop_mass * r.hoop_radius * r.hoop_radius;
    r.lifetime = f.lifetime_coefficient * mr2 / si::hbar;
    r.temperature = si::hbar * si::hbar / (mr2 * si::boltzmann);
    return r;
}

} // namespace ahoop
