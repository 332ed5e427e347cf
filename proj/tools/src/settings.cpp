#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tcd/cli/run.hpp"

namespace tcd::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
        throw usage_error("invalid value for " + key + ": '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw usage_error("invalid value for " + key + ": '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(parse_number<double>(key, trim(item)));
    }
    if (out.empty()) {
        throw usage_error(key + " needs at least one value");
    }
    return out;
}

} // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "mass",   "a",       "b",       "kappa-min", "kappa-max", "n-max",    "branch", "format", "out",
        "preset", "conjugate", "a-grid", "kbar-min", "kbar-max",  "n-g",      "kappa",  "special", "r-first",
        "r-last", "points",  "grid",    "tolerance", "perturb",   "matrix"};
    return keys;
}

Settings preset(const std::string& name) {
    if (name == "fig1" || name == "fig2") {
        return {{"mass", "1"},      {"a", "0"},      {"b", "1"},        {"kappa-min", "-10"},
                {"kappa-max", "-1"}, {"n-max", "4"}, {"branch", "plus"}, {"conjugate", name == "fig2" ? "true" : "false"}};
    }
    if (name == "fig3a" || name == "fig3b") {
        const bool left = name == "fig3a";
        return {{"mass", "1"},
                {"b", left ? "1" : "-1"},
                {"a-grid", "-2,-1,0,1,2"},
                {"kappa-min", "-12"},
                {"kappa-max", "12"},
                {"kbar-min", left ? "-10" : "1"},
                {"kbar-max", left ? "-1" : "10"},
                {"n-g", "1"}};
    }
    throw usage_error("unknown preset '" + name + "' (expected fig1, fig2, fig3a or fig3b)");
}

Settings parse_config_text(const std::string& text) {
    Settings out;
    std::stringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw usage_error("config line " + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const auto& keys = known_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw usage_error("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Settings read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw usage_error("cannot read config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

Settings merge(std::initializer_list<Settings> layers) {
    Settings out;
    for (const auto& layer : layers) {
        for (const auto& [key, value] : layer) {
            out[key] = value;
        }
    }
    return out;
}

RunConfig to_run_config(const Settings& settings) {
    RunConfig c;
    for (const auto& [key, v] : settings) {
        if (key == "mass") {
            c.mass = parse_number<double>(key, v);
        } else if (key == "a") {
            c.a = parse_number<double>(key, v);
        } else if (key == "b") {
            c.b = parse_number<double>(key, v);
        } else if (key == "kappa-min") {
            c.kappa_min = parse_number<int>(key, v);
        } else if (key == "kappa-max") {
            c.kappa_max = parse_number<int>(key, v);
        } else if (key == "n-max") {
            c.n_max = parse_number<int>(key, v);
        } else if (key == "branch") {
            if (v == "plus") {
                c.branch = BranchSelection::plus;
            } else if (v == "minus") {
                c.branch = BranchSelection::minus;
            } else if (v == "both") {
                c.branch = BranchSelection::both;
            } else {
                throw usage_error("branch must be plus, minus or both");
            }
        } else if (key == "format") {
            if (v == "csv") {
                c.format = OutputFormat::csv;
            } else if (v == "json") {
                c.format = OutputFormat::json;
            } else {
                throw usage_error("format must be csv or json");
            }
        } else if (key == "out") {
            c.out = v;
        } else if (key == "conjugate") {
            c.conjugate = parse_bool(key, v);
        } else if (key == "a-grid") {
            c.a_grid = parse_list(key, v);
        } else if (key == "kbar-min") {
            c.kbar_min = parse_number<double>(key, v);
        } else if (key == "kbar-max") {
            c.kbar_max = parse_number<double>(key, v);
        } else if (key == "n-g") {
            c.n_g = parse_number<int>(key, v);
        } else if (key == "kappa") {
            c.kappa = parse_number<int>(key, v);
        } else if (key == "special") {
            c.special = parse_bool(key, v);
        } else if (key == "r-first") {
            c.r_first = parse_number<double>(key, v);
        } else if (key == "r-last") {
            c.r_last = parse_number<double>(key, v);
        } else if (key == "points") {
            c.points = parse_number<int>(key, v);
        } else if (key == "grid") {
            if (v != "log" && v != "linear") {
                throw usage_error("grid must be log or linear");
            }
            c.grid = v;
        } else if (key == "tolerance") {
            c.tolerance = parse_number<double>(key, v);
        } else if (key == "perturb") {
            c.perturb = parse_bool(key, v);
        } else if (key == "matrix") {
            c.matrix = parse_bool(key, v);
        } else if (key != "preset") {
            throw usage_error("unknown key '" + key + "'");
        }
    }
    if (!(c.mass > 0.0)) {
        throw usage_error("mass must be positive");
    }
    if (c.n_max < 0) {
        throw usage_error("n-max must be nonnegative");
    }
    if (c.kappa_min && c.kappa_max && *c.kappa_min > *c.kappa_max) {
        throw usage_error("kappa-min exceeds kappa-max");
    }
    if (c.kbar_min > c.kbar_max) {
        throw usage_error("kbar-min exceeds kbar-max");
    }
    if (c.points < 2) {
        throw usage_error("points must be at least 2");
    }
    if (!(c.tolerance > 0.0)) {
        throw usage_error("tolerance must be positive");
    }
    return c;
}

} // namespace tcd::cli
