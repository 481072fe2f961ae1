#pragma once

// Argument parsing for the ahoop executable. All options live on the root
// app; subcommands only pick the command and fall through, so a config file
// is a flat list of `key = value` lines using the long option names.
// Command-line flags win over the config file.

#include "ahoop/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ahoop {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_solver = 3, exit_io = 4 };

/// Runs the CLI on args (without the program name). Output goes to `out`
/// unless --out names a file; diagnostics go to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scattering on a rotating flux hoop: phase shifts, resonance, variational bound", "ahoop"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value file; command-line flags take precedence");

    RunConfig c;
    std::string out_path, grid_spec, n_list, l_list;
    std::vector<std::string> truncs;
    std::optional<double> radius, hoop_mass, particle_mass;

    app.add_option("--out", out_path, "Write output to this file instead of stdout");
    app.add_option("--units", c.units, "natural (hbar = m_H = R = 1) or si")
        ->check(CLI::IsMember({"natural", "si"}));
    app.add_option("--grid", grid_spec, "<min>:<max>:<count>[:log]");
    app.add_option("--trunc", truncs, "N=<even>,L=<odd>; repeat for several truncations");
    app.add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--hoop-radius", radius, "Hoop radius (m in si units)");
    app.add_option("--hoop-mass", hoop_mass, "Hoop mass (kg in si units)");
    app.add_option("--particle-mass", particle_mass, "Particle mass; omit for an infinitely heavy particle");
    app.add_option("--axis", c.axis, "static-scan abscissa: k1r or energy")->check(CLI::IsMember({"k1r", "energy"}));
    app.add_flag("--simple-trial", c.simple_trial, "variational: closed-form simple trial series instead of the Bessel basis");
    app.add_option("--max-l", c.simple_max_L, "variational --simple-trial: largest odd L");
    app.add_option("--fit-min-l", c.simple_fit_min_L, "variational --simple-trial: smallest L in the ln L fit");
    app.add_option("--n-values", n_list, "variational: comma list of even N");
    app.add_option("--l-values", l_list, "variational: comma list of odd L; potential: comma list of l");
    app.add_option("--e-min", c.e_min, "variational: lower end of the construction-energy scan (units of W)");
    app.add_option("--e-max", c.e_max, "variational: upper end of the construction-energy scan (units of W)");
    app.add_option("--reference-l", c.reference_L, "variational: L_ref of the extrapolation (0 = largest L)");
    app.add_option("--min-fit-n", c.min_fit_N, "variational: smallest N entering the 1/N extrapolation");
    app.add_option("--alpha", c.feasibility.alpha, "estimate: R / r_p");
    app.add_option("--beta", c.feasibility.beta, "estimate: m_p / m_H");
    app.add_option("--n", c.feasibility.n, "estimate: atoms around the minor circumference");
    app.add_option("--carbon-mass", c.feasibility.carbon_mass, "estimate: carbon atom mass, kg");
    app.add_option("--bond-length", c.feasibility.bond_length, "estimate: C-C bond length, m");
    app.add_option("--density", c.feasibility.density, "estimate: particle density, kg/m^3");
    app.add_option("--lifetime-coefficient", c.feasibility.lifetime_coefficient,
                   "estimate: tau in units of m_H R^2 / hbar");
    for (CLI::Option* o : app.get_options())
        if (o->get_items_expected_max() == 1) o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    for (const char* name : {"phase-scan", "resonance", "potential", "variational", "static-scan", "estimate"})
        app.add_subcommand(name)->fallthrough();
    app.get_subcommand("phase-scan")->description("CSV of the S/P phase shift over an E/W grid");
    app.get_subcommand("resonance")->description("Resonance position, width, lifetime and frequency ratio");
    app.get_subcommand("potential")->description("CSV of the effective potential in units of W");
    app.get_subcommand("variational")->description("Variational upper bounds and their extrapolation");
    app.get_subcommand("static-scan")->description("CSV of static-hoop multichannel amplitudes");
    app.get_subcommand("estimate")->description("Order-of-magnitude laboratory estimate (SI)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::CallForVersion& e) {
        out << "ahoop " << version << '\n';
        return exit_ok;
    } catch (const CLI::FileError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    c.command = app.get_subcommands().front()->get_name();

    std::ostringstream buffer;
    try {
        if (c.units == "si") {
            // Without explicit values the SI model is the default estimate's hoop.
            const FeasibilityReport hoop = estimate_feasibility(FeasibilityParams{});
            c.model = ModelParams::si_units(radius.value_or(hoop.hoop_radius), hoop_mass.value_or(hoop.hoop_mass),
                                            particle_mass.value_or(infinite_mass));
        } else {
            c.model.hoop_radius = radius.value_or(1.0);
            c.model.hoop_mass = hoop_mass.value_or(1.0);
            c.model.particle_mass = particle_mass.value_or(infinite_mass);
        }
        if (!grid_spec.empty()) c.grid = parse_grid(grid_spec);
        for (const auto& t : truncs) c.truncations.push_back(parse_truncation(t));
        if (!n_list.empty()) c.n_values = parse_int_list(n_list);
        if (!l_list.empty()) c.l_values = parse_int_list(l_list);
        run_command(c, buffer);
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << '\n';
        return exit_solver;
    }

    if (out_path.empty()) {
        out << buffer.str();
        out.flush();
        return out ? exit_ok : exit_io;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return exit_io;
    }
    file << buffer.str();
    file.close();
    if (!file) {
        err << "error: failed writing '" << out_path << "'\n";
        return exit_io;
    }
    return exit_ok;
}

} // namespace ahoop
