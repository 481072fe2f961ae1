#pragma once

// Command implementations behind the ahoop executable. Each command writes a
// '#'-prefixed echo of its effective configuration followed by CSV rows or a
// key=value report. Worker count and output path are deliberately left out
// of the echo: they do not change the numbers, and leaving them out keeps
// outputs byte-identical across runs that differ only in those.

#include "ahoop/errors.hpp"
#include "ahoop/feasibility.hpp"
#include "ahoop/grid.hpp"
#include "ahoop/model.hpp"
#include "ahoop/parallel.hpp"
#include "ahoop/sp_scattering.hpp"
#include "ahoop/static_multichannel.hpp"
#include "ahoop/variational.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ahoop {

inline constexpr std::string_view version = "1.0.0";

/// 17 significant digits, '.' decimal separator regardless of locale.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string format_grid(const Grid& g) {
    return format_double(g.min) + ":" + format_double(g.max) + ":" + std::to_string(g.count) + ":" +
           (g.spacing == Spacing::log ? "log" : "linear");
}

inline std::string format_int_list(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

/// Parses "N=<even>,L=<odd>" (either order). The L = N + 1 pairing is left
/// to the caller because the variational sweep does not need it.
inline TruncationScheme parse_truncation(std::string_view s) {
    std::optional<int> n, l;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = std::min(s.find(',', pos), s.size());
        const std::string_view item = s.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("truncation must look like N=<even>,L=<odd>");
        const std::string_view key = item.substr(0, eq);
        const int value = parse_int(item.substr(eq + 1));
        if (key == "N" || key == "n")
            n = value;
        else if (key == "L" || key == "l")
            l = value;
        else
            throw std::invalid_argument("unknown truncation key '" + std::string(key) + "'");
        pos = comma + 1;
    }
    if (!n && !l) throw std::invalid_argument("truncation must give N and/or L");
    TruncationScheme t;
    t.L = l ? *l : *n + 1;
    t.N = n ? *n : *l - 1;
    if (t.N < 0 || t.N % 2 != 0) throw std::invalid_argument("truncation: N must be even and non-negative");
    if (t.L < 1 || t.L % 2 != 1) throw std::invalid_argument("truncation: L must be odd and positive");
    return t;
}

inline std::vector<int> parse_int_list(std::string_view s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = std::min(s.find(',', pos), s.size());
        out.push_back(parse_int(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

struct RunConfig {
    std::string command;
    std::string units = "natural";
    ModelParams model;
    std::optional<Grid> grid;
    std::vector<TruncationScheme> truncations;
    std::string axis = "k1r";  // static-scan: k1r | energy
    bool simple_trial = false; // variational
    int simple_max_L = 201;
    int simple_fit_min_L = 21;
    std::vector<int> n_values; // variational N list
    std::vector<int> l_values; // variational L list, potential l list
    double e_min = 0.05;
    double e_max = 1.0 - 1e-6;
    int reference_L = 0;
    int min_fit_N = 4;
    FeasibilityParams feasibility;
    unsigned threads = 1;
};

namespace detail {

inline void echo(std::ostream& os, std::string_view key, const std::string& value) {
    os << "# " << key << '=' << value << '\n';
}

inline void echo_model(std::ostream& os, const RunConfig& c) {
    echo(os, "units", c.units);
    echo(os, "hbar", format_double(c.model.hbar));
    echo(os, "hoop_radius", format_double(c.model.hoop_radius));
    echo(os, "hoop_mass", format_double(c.model.hoop_mass));
    echo(os, "particle_mass", format_double(c.model.particle_mass));
}

inline void echo_header(std::ostream& os, const RunConfig& c) {
    os << "# ahoop " << version << '\n';
    echo(os, "command", c.command);
}

inline std::string key_value(std::string_view key, double v) {
    return std::string(key) + "=" + format_double(v) + "\n";
}

} // namespace detail

// ---------------------------------------------------------------------------

inline Grid default_phase_grid() { return {1.0001, 1.1, 1000, Spacing::linear}; }

inline void cmd_phase_scan(const RunConfig& c, std::ostream& os) {
    const Grid g = c.grid.value_or(default_phase_grid());
    g.validate();
    if (!(g.min > 1.0) || !(g.max < 6.0))
        throw std::invalid_argument("phase-scan: grid must lie inside (1, 6) in units of W");
    detail::echo_header(os, c);
    detail::echo_model(os, c);
    detail::echo(os, "grid", format_grid(g));
    const auto es = g.values();
    const auto pts = phase_scan(c.model, es, c.threads);
    os << "E_over_W,k1R,delta_rad,sin2_delta,re_S,im_S\n";
    for (const auto& p : pts)
        os << format_double(p.energy_over_w) << ',' << format_double(p.k1R) << ',' << format_double(p.delta) << ','
           << format_double(p.sin2_delta) << ',' << format_double(p.s.real()) << ',' << format_double(p.s.imag())
           << '\n';
}

inline void cmd_resonance(const RunConfig& c, std::ostream& os) {
    ResonanceScan scan;
    if (c.grid) {
        c.grid->validate();
        if (c.grid->spacing != Spacing::linear) throw std::invalid_argument("resonance: scan grid must be linear");
        scan.min_over_w = c.grid->min;
        scan.max_over_w = c.grid->max;
        scan.points = c.grid->count;
    }
    detail::echo_header(os, c);
    detail::echo_model(os, c);
    detail::echo(os, "grid", format_grid({scan.min_over_w, scan.max_over_w, scan.points, Spacing::linear}));
    const ResonanceReport r = find_resonance(c.model, scan);
    os << "# S/P resonance: peak of sin^2(delta), width at half maximum.\n"
       << "# lifetime = hbar/dE in units of m_H R^2/hbar; rotation period of the\n"
       << "# unit-spin hoop 2 pi I/(hbar sqrt 2); nu_R/nu_T uses the exterior kinetic energy.\n";
    os << detail::key_value("peak_over_w", r.peak_over_w) << detail::key_value("fwhm_over_w", r.fwhm_over_w)
       << detail::key_value("half_max_low_over_w", r.half_max_low)
       << detail::key_value("half_max_high_over_w", r.half_max_high)
       << detail::key_value("sin2_delta_at_peak", r.sin2_at_peak) << detail::key_value("lifetime", r.lifetime)
       << detail::key_value("frequency_ratio", r.frequency_ratio)
       << detail::key_value("rotation_period", r.rotation_period)
       << detail::key_value("lifetime_over_rotation", r.lifetime_over_rotation);
    if (c.units == "si") {
        const double unit = c.model.inverse_time_unit();
        os << detail::key_value("threshold_J", c.model.threshold()) << detail::key_value("lifetime_s", r.lifetime / unit)
           << detail::key_value("rotation_period_s", r.rotation_period / unit);
    }
}

inline void cmd_potential(const RunConfig& c, std::ostream& os) {
    const Grid g = c.grid.value_or(Grid{0.05, 5.0, 100, Spacing::linear});
    g.validate();
    if (!(g.min > 0)) throw std::invalid_argument("potential: radial grid must start above 0");
    const std::vector<int> ls = c.l_values.empty() ? std::vector<int>{0, 1} : c.l_values;
    for (int l : ls)
        if (l < 0) throw std::invalid_argument("potential: l must be non-negative");
    detail::echo_header(os, c);
    detail::echo_model(os, c);
    detail::echo(os, "grid", format_grid(g));
    detail::echo(os, "l_values", format_int_list(ls));
    os << "# even l: interior rows (r <= R); odd l: exterior rows (r >= R)\n";
    os << "r_over_R,l,V_over_W\n";
    const double w = c.model.threshold();
    for (double x : g.values()) {
        for (int l : ls) {
            const Channel ch = l % 2 == 0 ? Channel::interior(l) : Channel::exterior(l);
            if ((ch.region == Region::interior && x > 1.0) || (ch.region == Region::exterior && x < 1.0)) continue;
            const double v = effective_potential(c.model, ch, x * c.model.hoop_radius) / w;
            os << format_double(x) << ',' << l << ',' << format_double(v) << '\n';
        }
    }
}

inline void cmd_simple_trial(const RunConfig& c, std::ostream& os) {
    if (c.simple_max_L < 1 || c.simple_max_L % 2 != 1)
        throw std::invalid_argument("variational: --max-l must be odd and positive");
    detail::echo_header(os, c);
    detail::echo_model(os, c);
    detail::echo(os, "simple_trial", "true");
    detail::echo(os, "max_l", std::to_string(c.simple_max_L));
    detail::echo(os, "fit_min_l", std::to_string(c.simple_fit_min_L));
    const SimpleTrialResult r = simple_trial_energy(c.model, c.simple_max_L);
    os << "L,ln_L,channel_energy_over_w,cumulative_energy_over_w,cumulative_norm,quotient_over_w\n";
    std::vector<double> x, y;
    for (const auto& ch : r.channels) {
        const double lnL = std::log(static_cast<double>(ch.l));
        os << ch.l << ',' << format_double(lnL) << ',' << format_double(ch.energy) << ','
           << format_double(ch.cumulative_energy) << ',' << format_double(ch.cumulative_norm) << ','
           << format_double(ch.quotient_over_w) << '\n';
        if (ch.l >= c.simple_fit_min_L) {
            x.push_back(lnL);
            y.push_back(ch.cumulative_energy);
        }
    }
    if (x.size() >= 2) {
        const LinearFit f = fit_line(x, y);
        os << "# fit cumulative_energy_over_w = a + b ln L over L >= " << c.simple_fit_min_L << '\n';
        os << "# fit_intercept=" << format_double(f.intercept) << '\n'
           << "# fit_slope=" << format_double(f.slope) << '\n'
           << "# fit_r_squared=" << format_double(f.r_squared) << '\n';
    } else {
        os << "# fit skipped: fewer than two L values at or above " << c.simple_fit_min_L << '\n';
    }
}

inline void cmd_variational(const RunConfig& c, std::ostream& os) {
    if (c.simple_trial) return cmd_simple_trial(c, os);

    VariationalGrid grid;
    if (!c.n_values.empty()) grid.N = c.n_values;
    if (!c.l_values.empty()) grid.L = c.l_values;
    grid.scan.min = c.e_min;
    grid.scan.max = c.e_max;
    for (int n : grid.N)
        if (n < 0 || n % 2 != 0) throw std::invalid_argument("variational: N values must be even and non-negative");
    for (int l : grid.L)
        if (l < 1 || l % 2 != 1) throw std::invalid_argument("variational: L values must be odd and positive");
    if (!(c.e_min > 0.0 && c.e_max < 1.0 && c.e_min < c.e_max))
        throw std::invalid_argument("variational: construction-energy window must lie inside (0, 1)");

    detail::echo_header(os, c);
    detail::echo_model(os, c);
    std::vector<VariationalResult> results;
    if (!c.truncations.empty()) {
        std::string list;
        for (const auto& t : c.truncations) list += (list.empty() ? "" : ";") + ("N=" + std::to_string(t.N) + ",L=" + std::to_string(t.L));
        detail::echo(os, "trunc", list);
        results = parallel_map(c.truncations.size(), c.threads, [&](std::size_t i) {
            return bessel_trial_minimize(c.model, c.truncations[i].N, c.truncations[i].L, grid.scan);
        });
    } else {
        detail::echo(os, "n_values", format_int_list(grid.N));
        detail::echo(os, "l_values", format_int_list(grid.L));
        results = variational_sweep(c.model, grid, c.threads);
    }
    detail::echo(os, "e_window", format_double(c.e_min) + ":" + format_double(c.e_max));
    detail::echo(os, "reference_l", std::to_string(c.reference_L));
    detail::echo(os, "min_fit_n", std::to_string(c.min_fit_N));

    os << "N,L,e_star,E_min_over_W\n";
    for (const auto& r : results)
        os << r.N << ',' << r.L << ',' << format_double(r.construction_energy) << ','
           << format_double(r.energy_over_w) << '\n';

    // E_min must not rise when N grows at fixed L.
    bool monotone = true;
    for (const auto& a : results)
        for (const auto& b : results)
            if (a.L == b.L && b.N > a.N && b.energy_over_w > a.energy_over_w + 1e-12) monotone = false;
    os << "# monotone_in_N=" << (monotone ? "true" : "false") << '\n';

    try {
        const ExtrapolationReport rep = extrapolate_bound(results, {c.reference_L, c.min_fit_N, 0.9});
        os << "# extrapolation: E(N,L) = alpha_N + beta_N ln(L/L_ref), then alpha_N, beta_N linear in 1/N for N >= "
           << c.min_fit_N << '\n';
        for (const auto& f : rep.fits)
            os << "# fit N=" << f.N << " alpha=" << format_double(f.alpha) << " beta=" << format_double(f.beta)
               << " r_squared=" << format_double(f.r_squared) << " points=" << f.points << '\n';
        os << "# reference_L=" << rep.reference_L << '\n'
           << "# bound_over_w=" << format_double(rep.bound_over_w()) << '\n'
           << "# beta_limit=" << format_double(rep.beta_limit) << '\n'
           << "# intercept_at_L1_over_w=" << format_double(rep.intercept_limit) << '\n'
           << "# alpha_limit_r_squared=" << format_double(rep.alpha_r_squared) << '\n';
        for (const auto& w : rep.warnings) os << "# warning: " << w << '\n';
    } catch (const SolverError& e) {
        os << "# extrapolation skipped: " << e.what() << '\n';
    }
}

inline void cmd_static_scan(const RunConfig& c, std::ostream& os) {
    const bool by_k = c.axis == "k1r";
    if (!by_k && c.axis != "energy") throw std::invalid_argument("static-scan: --axis must be k1r or energy");
    const Grid g = c.grid.value_or(by_k ? Grid{20.0, 50.0, 4, Spacing::linear} : Grid{1.01, 1.2, 20, Spacing::linear});
    g.validate();
    std::vector<TruncationScheme> truncs = c.truncations;
    if (truncs.empty())
        for (int l = 1; l <= 9; l += 2) truncs.push_back(TruncationScheme::from_L(l));
    for (const auto& t : truncs) t.validate();

    detail::echo_header(os, c);
    detail::echo_model(os, c);
    detail::echo(os, "axis", c.axis);
    detail::echo(os, "grid", format_grid(g));
    std::string list;
    for (const auto& t : truncs) list += (list.empty() ? "" : ";") + ("N=" + std::to_string(t.N) + ",L=" + std::to_string(t.L));
    detail::echo(os, "trunc", list);

    const auto xs = g.values();
    const std::size_t nt = truncs.size();
    const auto sets = parallel_map(xs.size() * nt, c.threads, [&](std::size_t i) {
        const double x = xs[i / nt];
        const double e = by_k ? energy_for_k1R(c.model, x) : x;
        return solve_static_system(c.model, e, truncs[i % nt]);
    });
    os << (by_k ? "k1R" : "E_over_W") << ",L,re_c1,im_c1,chi,sum_abs_cl_sq_above_1\n";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const AmplitudeSet& a = sets[i];
        os << format_double(xs[i / nt]) << ',' << a.truncation.L << ',' << format_double(a.s.real()) << ','
           << format_double(a.s.imag()) << ',' << format_double(a.chi) << ',' << format_double(a.higher_flux) << '\n';
    }
}

inline void cmd_estimate(const RunConfig& c, std::ostream& os) {
    const FeasibilityParams& f = c.feasibility;
    const FeasibilityReport r = estimate_feasibility(f);
    const ScalingExponents ex;
    detail::echo_header(os, c);
    detail::echo(os, "alpha", format_double(f.alpha));
    detail::echo(os, "beta", format_double(f.beta));
    detail::echo(os, "n", format_double(f.n));
    detail::echo(os, "carbon_mass_kg", format_double(f.carbon_mass));
    detail::echo(os, "bond_length_m", format_double(f.bond_length));
    detail::echo(os, "density_kg_m3", format_double(f.density));
    detail::echo(os, "lifetime_coefficient", format_double(f.lifetime_coefficient));
    os << "# tau = coefficient * m_H R^2 / hbar with m_H the hoop mass (infinitely heavy particle);\n"
       << "# temperature scale hbar^2 / (m_H R^2 k_B).\n";
    os << detail::key_value("N", r.N) << detail::key_value("hoop_radius_m", r.hoop_radius)
       << detail::key_value("hoop_mass_kg", r.hoop_mass) << detail::key_value("particle_radius_m", r.particle_radius)
       << detail::key_value("particle_mass_kg", r.particle_mass) << detail::key_value("lifetime_s", r.lifetime)
       << detail::key_value("lifetime_hr", r.lifetime / 3600.0) << detail::key_value("temperature_K", r.temperature)
       << detail::key_value("tau_exponent_alpha", ex.tau_alpha) << detail::key_value("tau_exponent_beta", ex.tau_beta)
       << detail::key_value("tau_exponent_n", ex.tau_n) << detail::key_value("N_exponent_alpha", ex.N_alpha)
       << detail::key_value("N_exponent_beta", ex.N_beta) << detail::key_value("N_exponent_n", ex.N_n);
}

inline void run_command(const RunConfig& c, std::ostream& os) {
    if (c.command != "estimate") c.model.validate();
    if (c.command == "phase-scan") return cmd_phase_scan(c, os);
    if (c.command == "resonance") return cmd_resonance(c, os);
    if (c.command == "potential") return cmd_potential(c, os);
    if (c.command == "variational") return cmd_variational(c, os);
    if (c.command == "static-scan") return cmd_static_scan(c, os);
    if (c.command == "estimate") return cmd_estimate(c, os);
    throw std::invalid_argument("unknown command '" + c.command + "'");
}

} // namespace ahoop
