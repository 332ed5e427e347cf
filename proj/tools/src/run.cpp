#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tcd/cli/run.hpp"

namespace tcd::cli {

namespace {

struct OptionSpec {
    const char* key;
    const char* help;
    bool flag = false;
};

const std::vector<OptionSpec> common_options{
    {"mass", "particle mass M (> 0)"},
    {"a", "Coulomb-like tensor strength"},
    {"b", "constant tensor strength"},
    {"kappa-min", "smallest kappa (0 is skipped)"},
    {"kappa-max", "largest kappa"},
    {"n-max", "highest level index"},
    {"branch", "plus, minus or both"},
    {"format", "csv or json"},
    {"out", "output file, '-' for stdout"},
    {"preset", "fig1, fig2, fig3a or fig3b"},
    {"config", "flat key=value file; flags override it"},
};

const std::map<std::string, std::vector<OptionSpec>> command_options{
    {"spectrum", {{"conjugate", "emit the charge-conjugate spectrum E^c", true}}},
    {"fig3",
     {{"a-grid", "comma-separated values of a"},
      {"kbar-min", "lower end of the kappa_bar window"},
      {"kbar-max", "upper end of the kappa_bar window"},
      {"n-g", "Laguerre degree of g"}}},
    {"wavefunction",
     {{"kappa", "channel"},
      {"n-g", "Laguerre degree of g (0 below kappa_bar = -1/2 is the E = +M state)"},
      {"special", "the E = +-M state of the channel", true},
      {"r-first", "first grid point (default 1e-4/gamma)"},
      {"r-last", "last grid point"},
      {"points", "number of grid points"},
      {"grid", "log or linear"}}},
    {"verify",
     {{"tolerance", "allowed |E_analytic - E_oracle| in units of M"},
      {"perturb", "shift analytic energies by 1e-3 M (harness self-test)", true},
      {"matrix", "run the built-in parameter matrix (default unless --a or --b is given)"}}},
};

void emit(const Table& table, const RunConfig& c, std::ostream& out) {
    if (c.out == "-") {
        c.format == OutputFormat::csv ? write_csv(table, out) : write_json(table, out);
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file) {
        throw usage_error("cannot write '" + c.out + "'");
    }
    c.format == OutputFormat::csv ? write_csv(table, file) : write_json(table, file);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dirac bound states in the tensor potential U(r) = a/r + b", "tcd"};
    app.require_subcommand(1);

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, bool>> flags;
    std::map<std::string, CLI::App*> subs;
    const std::map<std::string, std::string> descriptions{
        {"spectrum", "bound-state energies per channel and level"},
        {"fig3", "E/M of one level across kappa for several a"},
        {"wavefunction", "sampled g(r), f(r) of one state"},
        {"verify", "compare analytic energies with the shooting oracle"},
    };
    for (const auto& [name, extra] : command_options) {
        CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
        subs[name] = sub;
        std::vector<OptionSpec> all = common_options;
        all.insert(all.end(), extra.begin(), extra.end());
        for (const auto& spec : all) {
            const std::string flag_name = std::string("--") + spec.key;
            if (spec.flag) {
                sub->add_flag(flag_name, flags[name][spec.key], spec.help);
            } else {
                sub->add_option(flag_name, values[name][spec.key], spec.help);
            }
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "tcd: " << e.what() << '\n';
        return exit_usage;
    }

    std::string command;
    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) {
            command = name;
        }
    }
    CLI::App* sub = subs.at(command);

    try {
        Settings from_flags;
        for (const auto& [key, value] : values[command]) {
            if (key != "config" && sub->get_option("--" + key)->count() > 0) {
                from_flags[key] = value;
            }
        }
        for (const auto& [key, value] : flags[command]) {
            if (sub->get_option("--" + key)->count() > 0) {
                from_flags[key] = value ? "true" : "false";
            }
        }
        const std::string& config_path = values[command]["config"];
        const Settings from_file = config_path.empty() ? Settings{} : read_config_file(config_path);
        const Settings explicit_layers = merge({from_file, from_flags});
        Settings from_preset;
        if (const auto it = explicit_layers.find("preset"); it != explicit_layers.end()) {
            from_preset = preset(it->second);
        }
        Settings merged = merge({from_preset, explicit_layers});
        if (command == "verify" && !merged.count("matrix") &&
            (explicit_layers.count("a") || explicit_layers.count("b") || explicit_layers.count("mass"))) {
            merged["matrix"] = "false";
        }
        const RunConfig config = to_run_config(merged);

        if (command == "spectrum") {
            emit(cmd_spectrum(config), config, out);
        } else if (command == "fig3") {
            emit(cmd_fig3(config), config, out);
        } else if (command == "wavefunction") {
            emit(cmd_wavefunction(config), config, out);
        } else {
            const VerifyOutcome v = cmd_verify(config);
            emit(v.table, config, out);
            err << "verify: " << v.checked << " checks, " << v.failures << " failures, max |dE| = "
                << format_number(v.max_energy_deviation) << ", max residual = " << format_number(v.max_residual)
                << '\n';
            for (const auto& f : v.first_failures) {
                err << "  FAIL " << f << '\n';
            }
            return v.failures == 0 ? exit_ok : exit_verification;
        }
    } catch (const usage_error& e) {
        err << "tcd " << command << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "tcd " << command << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "tcd " << command << ": " << e.what() << '\n';
        return exit_usage;
    }
    return exit_ok;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

} // namespace tcd::cli
