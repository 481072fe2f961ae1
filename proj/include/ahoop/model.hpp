#pragma once

// Physical model of a charged particle scattering on a rigid flux hoop that
// carries half an Aharonov-Bohm flux quantum.
//
// Conventions:
// - Interior region (r < R) carries even partial waves, exterior (r > R) odd.
// - A channel of angular index l carries hoop rotational energy
//   E_rot(l) = hbar^2 l(l+1) / (2I), I = m_H R^2 / 2.
// - The threshold W = E_rot(1) is the energy of the hoop with one quantum of
//   angular momentum; solvers take energies as ratios e = E/W.
// - Internally every solver works in natural units hbar = m_H = R = 1, where
//   W = 2 and the only remaining parameter is the mass ratio m_mu / m_H.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ahoop {

namespace si {
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double boltzmann = 1.380649e-23; // J / K
inline constexpr double atomic_mass = 1.66053906660e-27; // kg
} // namespace si

inline constexpr double infinite_mass = std::numeric_limits<double>::infinity();

struct ModelParams {
    double hbar = 1.0;
    double hoop_radius = 1.0;
    double hoop_mass = 1.0;
    double particle_mass = infinite_mass;

    static ModelParams natural() { return {}; }

    /// SI units with hoop radius in metres and masses in kilograms.
    static ModelParams si_units(double radius_m, double hoop_mass_kg,
                                double particle_mass_kg = infinite_mass) {
        ModelParams p{si::hbar, radius_m, hoop_mass_kg, particle_mass_kg};
        p.validate();
        return p;
    }

    void validate() const {
        if (!(hbar > 0) || !std::isfinite(hbar))
            throw std::invalid_argument("ModelParams: hbar must be positive and finite");
        if (!(hoop_radius > 0) || !std::isfinite(hoop_radius))
            throw std::invalid_argument("ModelParams: hoop radius must be positive and finite");
        if (!(hoop_mass > 0) || !std::isfinite(hoop_mass))
            throw std::invalid_argument("ModelParams: hoop mass must be positive and finite");
        if (!(particle_mass > 0))
            throw std::invalid_argument("ModelParams: particle mass must be positive (or infinite)");
    }

    double reduced_mass() const {
        if (std::isinf(particle_mass)) return hoop_mass;
        return hoop_mass * particle_mass / (hoop_mass + particle_mass);
    }

    /// m_mu / m_H, exactly 1 for an infinitely heavy particle.
    double mass_ratio() const {
        if (std::isinf(particle_mass)) return 1.0;
        return particle_mass / (hoop_mass + particle_mass);
    }

    double moment_of_inertia() const { return 0.5 * hoop_mass * hoop_radius * hoop_radius; }

    double rotational_energy(int l) const {
        return hbar * hbar * l * (l + 1.0) / (2.0 * moment_of_inertia());
    }

    double threshold() const { return rotational_energy(1); }

    /// hbar / (m_H R^2): the unit of inverse time used for lifetimes.
    double inverse_time_unit() const { return hbar / (hoop_mass * hoop_radius * hoop_radius); }
};

enum class Region { interior, exterior };

inline const char* to_string(Region r) { return r == Region::interior ? "interior" : "exterior"; }

/// A (region, angular index) pair. Interior channels have even l, exterior odd.
struct Channel {
    Region region;
    int l;

    static Channel interior(int l) {
        if (l < 0 || l % 2 != 0)
            throw std::invalid_argument("interior channels carry even l >= 0, got " + std::to_string(l));
        return {Region::interior, l};
    }
    static Channel exterior(int l) {
        if (l < 1 || l % 2 != 1)
            throw std::invalid_argument("exterior channels carry odd l >= 1, got " + std::to_string(l));
        return {Region::exterior, l};
    }

    /// Rotational energy in units of W: l(l+1)/2.
    double rotational_energy_over_w() const { return 0.5 * l * (l + 1.0); }
};

enum class WaveKind { propagating, evanescent };

struct ChannelWavenumber {
    WaveKind kind;
    double magnitude; // k or kappa, 1/length
};

/// Dimensionless wavenumber times R for a channel at energy e = E/W.
/// (kR)^2 = 2 (m_mu/m_H) |2e - l(l+1)| in natural units.
inline ChannelWavenumber wavenumber_R(double mass_ratio, const Channel& ch, double e_over_w) {
    const double diff = 2.0 * e_over_w - ch.l * (ch.l + 1.0);
    const double mag = std::sqrt(2.0 * mass_ratio * std::abs(diff));
    return {diff >= 0 ? WaveKind::propagating : WaveKind::evanescent, mag};
}

/// Channel wavenumber at absolute energy E from hbar^2 k^2 / 2m_mu = |E - E_rot|.
inline ChannelWavenumber wavenumber(const ModelParams& p, const Channel& ch, double energy) {
    p.validate();
    if (!(energy > 0)) throw std::invalid_argument("wavenumber: energy must be positive");
    const double diff = energy - p.rotational_energy(ch.l);
    const double mag = std::sqrt(2.0 * p.reduced_mass() * std::abs(diff)) / p.hbar;
    return {diff >= 0 ? WaveKind::propagating : WaveKind::evanescent, mag};
}

/// Kinetic energy entering the transit velocity.
enum class TransitConvention {
    exterior_kinetic, // E - W, the asymptotic P-channel kinetic energy
    total_energy      // E
};

struct Frequencies {
    double transit;    // nu_T = v / 2R
    double rotational; // nu_R = delta(L^2) hbar / (2 pi m_H R^2)
};

/// Transit and rotational frequencies at energy e = E/W. The rotational
/// frequency is that of the l_from -> l_to hoop transition (default 0 <-> 1).
inline Frequencies frequencies(const ModelParams& p, double e_over_w,
                               TransitConvention conv = TransitConvention::exterior_kinetic,
                               int l_from = 0, int l_to = 1) {
    p.validate();
    if (conv == TransitConvention::exterior_kinetic && !(e_over_w > 1.0))
        throw std::domain_error("frequencies: E must exceed the threshold W");
    if (!(e_over_w > 0.0)) throw std::domain_error("frequencies: E must be positive");
    const double w = p.threshold();
    const double kinetic = (conv == TransitConvention::exterior_kinetic ? e_over_w - 1.0 : e_over_w) * w;
    const double v = std::sqrt(2.0 * kinetic / p.reduced_mass());
    const double dl2 = std::abs(l_to * (l_to + 1.0) - l_from * (l_from + 1.0));
    const double nu_r = p.hbar * dl2 / (2.0 * std::numbers::pi * p.hoop_mass * p.hoop_radius * p.hoop_radius);
    return {v / (2.0 * p.hoop_radius), nu_r};
}

/// Centrifugal barrier plus hoop rotational offset, absolute energy units.
inline double effective_potential(const ModelParams& p, const Channel& ch, double r) {
    p.validate();
    if (!(r > 0)) throw std::invalid_argument("effective_potential: r must be positive");
    if (ch.region == Region::exterior && r < p.hoop_radius)
        throw std::invalid_argument("effective_potential: exterior channel evaluated inside the hoop");
    if (ch.region == Region::interior && r > p.hoop_radius)
        throw std::invalid_argument("effective_potential: interior channel evaluated outside the hoop");
    const double l2 = ch.l * (ch.l + 1.0);
    return p.hbar * p.hbar * l2 / (2.0 * p.reduced_mass() * r * r) + p.rotational_energy(ch.l);
}

/// Classical rotation period of the hoop with angular momentum hbar sqrt(l(l+1)).
inline double rotation_period(const ModelParams& p, int l = 1) {
    return 2.0 * std::numbers::pi * p.moment_of_inertia() / (p.hbar * std::sqrt(l * (l + 1.0)));
}

} // namespace ahoop
