#pragma once

// Library behind the `tcd` executable. Every setting is a flat key=value pair;
// layers are merged as defaults < preset < config file < command-line flags.

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tcd/spectrum.hpp"

namespace tcd::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_verification = 2;

/// Bad option values, unknown keys, impossible parameter combinations.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

using Settings = std::map<std::string, std::string>;

/// Keys accepted on the command line (as --key) and in config files.
[[nodiscard]] const std::vector<std::string>& known_keys();

/// Values of fig1, fig2, fig3a or fig3b. Throws usage_error otherwise.
[[nodiscard]] Settings preset(const std::string& name);

/// Parses `key = value` lines; blank lines and lines starting with '#' are
/// skipped. Throws usage_error on malformed lines or unknown keys.
[[nodiscard]] Settings parse_config_text(const std::string& text);
[[nodiscard]] Settings read_config_file(const std::string& path);

/// Later layers win.
[[nodiscard]] Settings merge(std::initializer_list<Settings> layers);

struct RunConfig {
    double mass = 1.0;
    double a = 0.0;
    double b = 1.0;
    std::optional<int> kappa_min;
    std::optional<int> kappa_max;
    int n_max = 4;
    BranchSelection branch = BranchSelection::plus;
    OutputFormat format = OutputFormat::csv;
    std::string out = "-";

    bool conjugate = false;

    std::vector<double> a_grid{0.0};
    double kbar_min = -10.0;
    double kbar_max = 10.0;
    int n_g = 1;

    std::optional<int> kappa;
    bool special = false;
    std::optional<double> r_first;
    std::optional<double> r_last;
    int points = 401;
    std::string grid = "log";

    double tolerance = 1e-7;
    bool perturb = false;
    /// verify: run the built-in parameter matrix instead of the single point (mass, a, b).
    bool matrix = true;
};

/// Throws usage_error on unparsable values.
[[nodiscard]] RunConfig to_run_config(const Settings& settings);

using Cell = std::variant<std::monostate, long long, double, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Emitted as leading "# key=value" lines (CSV) or a "meta" object (JSON).
    std::vector<std::pair<std::string, Cell>> meta;
};

/// Shortest decimal string that reads back to the same double.
[[nodiscard]] std::string format_number(double value);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

[[nodiscard]] Table cmd_spectrum(const RunConfig& config);
[[nodiscard]] Table cmd_fig3(const RunConfig& config);
[[nodiscard]] Table cmd_wavefunction(const RunConfig& config);

struct VerifyOutcome {
    Table table;
    std::size_t checked = 0;
    std::size_t failures = 0;
    double max_energy_deviation = 0.0;
    double max_residual = 0.0;
    std::vector<std::string> first_failures;
};
[[nodiscard]] VerifyOutcome cmd_verify(const RunConfig& config);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tcd::cli
