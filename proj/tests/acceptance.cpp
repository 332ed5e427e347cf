// One line per acceptance criterion; exit status 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "tcd/analytic.hpp"
#include "tcd/cli/run.hpp"
#include "tcd/errors.hpp"
#include "tcd/oracle.hpp"
#include "tcd/spectrum.hpp"

using namespace tcd;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

/// One bound state of the oracle grid, labelled by its level n (n_bar = n + |kb|).
struct GridState {
    ModelParams params;
    Channel channel;
    int level;
    BoundState state;
};

std::vector<GridState> oracle_grid() {
    std::vector<GridState> out;
    for (double bm : {0.5, 1.0, 2.0}) {
        for (double sign : {1.0, -1.0}) {
            for (double a : {0.0, 0.5, -0.5, 2.0, -2.0}) {
                const ModelParams p(1.0, a, sign * bm);
                for (int kappa : kappa_span(-5, 5)) {
                    const Channel ch = make_channel(p, kappa);
                    if (!bound_states_exist(p, ch)) {
                        continue;
                    }
                    const bool below = ch.kappa_bar() < 0.0;
                    for (int n = 0; n <= 4; ++n) {
                        BoundState s = n == 0 ? special_state(p, ch)
                                              : bound_state(p, ch, below ? n : n - 1, Branch::particle);
                        out.push_back({p, ch, n, s});
                    }
                }
            }
        }
    }
    return out;
}

double shoot(const GridState& g) {
    if (g.channel.kappa_bar() < 0.0) {
        return shoot_eigenvalue(g.params, g.channel, Component::upper, g.level).energy_pair.first;
    }
    if (g.level == 0) {
        return shoot_eigenvalue(g.params, g.channel, Component::lower, 0).energy_pair.first;
    }
    return shoot_eigenvalue(g.params, g.channel, Component::upper, g.level - 1).energy_pair.first;
}

Outcome oracle_agreement(const std::vector<GridState>& grid) {
    double worst = 0.0;
    for (const auto& g : grid) {
        worst = std::max(worst, std::abs(shoot(g) - std::abs(g.state.energy)));
    }
    return {worst <= 1e-7, std::to_string(grid.size()) + " states, max |dE| = " + fmt(worst)};
}

Outcome special_states() {
    int checked = 0;
    double worst_ratio = 0.0;
    bool exact = true;
    bool decays = true;
    for (double bm : {0.5, 1.0, 2.0}) {
        for (double a : {0.0, 0.5, -0.5, 2.0, -2.0}) {
            for (double sign : {1.0, -1.0}) {
                const ModelParams p(1.0, a, sign * bm);
                for (int kappa : kappa_span(-5, 5)) {
                    const Channel ch = make_channel(p, kappa);
                    if (!bound_states_exist(p, ch)) {
                        continue;
                    }
                    const BoundState s = special_state(p, ch);
                    exact = exact && s.energy == (sign > 0 ? 1.0 : -1.0);
                    FirstOrderConfig cfg;
                    cfg.r_max = 40.0 / s.gamma;
                    cfg.r_min = 1e-6 / s.gamma;
                    const auto res = integrate_first_order(p, ch, s.energy, cfg);
                    decays = decays && res.bound;
                    const double ratio = sign > 0 ? res.peak_f / res.peak_g : res.peak_g / res.peak_f;
                    worst_ratio = std::max(worst_ratio, ratio);
                    ++checked;
                }
            }
        }
    }
    return {exact && decays && worst_ratio < 1e-8,
            std::to_string(checked) + " channels, E = +-M exact: " + (exact ? "yes" : "no") +
                ", max vanishing/peak = " + fmt(worst_ratio)};
}

Outcome energy_window() {
    std::mt19937_64 rng(1000);
    std::uniform_real_distribution<double> um(0.05, 20.0);
    std::uniform_real_distribution<double> ua(-4.0, 4.0);
    std::uniform_real_distribution<double> ub(0.01, 10.0);
    std::uniform_int_distribution<int> uk(1, 15);
    std::uniform_int_distribution<int> un(0, 40);
    std::bernoulli_distribution coin(0.5);
    int draws = 0;
    int violations = 0;
    while (draws < 1000) {
        const double sign = coin(rng) ? 1.0 : -1.0;
        const ModelParams p(um(rng), ua(rng), sign * ub(rng));
        const Channel ch = make_channel(p, static_cast<int>(-sign) * uk(rng));
        if (!bound_states_exist(p, ch)) {
            continue;
        }
        const int n = un(rng);
        const Branch br = coin(rng) ? Branch::particle : Branch::antiparticle;
        double e = 0.0;
        if (n == 0 && ch.kappa_bar() < 0.0) {
            e = special_state(p, ch).energy;
        } else {
            e = energy(p, ch, n, br);
        }
        ++draws;
        if (!(std::abs(e) >= p.mass() && std::abs(e) < p.effective_mass())) {
            ++violations;
        }
    }
    return {violations == 0, std::to_string(draws) + " draws, " + std::to_string(violations) + " outside [M, M*)"};
}

Outcome node_law(const std::vector<GridState>& grid) {
    int bad = 0;
    for (const auto& g : grid) {
        const auto wf = wavefunctions(g.params, g.state);
        const auto s = sample(wf, log_grid(1e-4 / g.state.gamma, 150.0 / g.state.gamma, 4000));
        const int want_g = g.state.n_g.value_or(0);
        const int want_f = g.state.n_f.value_or(0);
        const bool relation = !g.state.n_g || !g.state.n_f ||
                              (g.channel.kappa_bar() < 0.0 ? want_f == want_g - 1 : want_f == want_g + 1);

        FirstOrderConfig cfg;
        cfg.r_min = 1e-6 / g.state.gamma;
        cfg.r_max = 40.0 / g.state.gamma;
        const auto num = integrate_first_order(g.params, g.channel, g.state.energy, cfg);
        if (s.node_count_g != want_g || s.node_count_f != want_f || !relation || num.samples.node_count_g != want_g ||
            num.samples.node_count_f != want_f) {
            ++bad;
        }
    }
    return {bad == 0, std::to_string(grid.size()) + " states (analytic and integrated), " + std::to_string(bad) +
                          " mismatches"};
}

Outcome residuals(const std::vector<GridState>& grid) {
    double worst = 0.0;
    int used = 0;
    const std::size_t stride = grid.size() / 50;
    for (std::size_t i = 0; i < grid.size() && used < 50; i += stride, ++used) {
        const auto& g = grid[i];
        const auto wf = wavefunctions(g.params, g.state);
        const double kb = g.channel.kappa_bar();
        const double m = g.params.mass();
        const double b = g.params.b();
        const double e = g.state.energy;
        const double lambda = e * e - m * m - b * b;
        const auto r = linear_grid(0.01, 30.0, 1500);
        double scale = 0.0;
        double res = 0.0;
        for (double x : r) {
            const double gv = wf.g.value(x);
            const double fv = wf.f.value(x);
            scale = std::max({scale, std::abs(gv), std::abs(fv)});
            const double w = kb / x + b;
            const double vg = oracle::potential(g.channel.kappa(), g.params.a(), b, true, x);
            const double vf = oracle::potential(g.channel.kappa(), g.params.a(), b, false, x);
            res = std::max({res, std::abs(wf.g.derivative(x) + w * gv - (m + e) * fv),
                            std::abs(wf.f.derivative(x) - w * fv - (m - e) * gv),
                            std::abs(wf.g.second_derivative(x) - (vg - lambda) * gv),
                            std::abs(wf.f.second_derivative(x) - (vf - lambda) * fv)});
        }
        worst = std::max(worst, res / scale);
    }
    return {used == 50 && worst < 1e-8, std::to_string(used) + " states, max relative residual = " + fmt(worst)};
}

Outcome conjugation() {
    double worst = 0.0;
    std::size_t unmatched = 0;
    std::size_t states = 0;
    for (double a : {0.0, 0.5, -0.5, 2.0, -2.0}) {
        for (double b : {0.5, 1.0, 2.0, -0.5, -1.0, -2.0}) {
            const auto rep = conjugation_report(ModelParams(1.0, a, b), kappa_span(-5, 5), 4);
            worst = std::max(worst, rep.max_relative_deviation);
            unmatched += rep.unmatched;
            states += rep.states_checked;
        }
    }
    // Figure datasets: every fig1 row has exactly one fig2 partner with -kb, equal n_bar and identical E.
    const auto f1 = tcd::cli::cmd_spectrum(tcd::cli::to_run_config(tcd::cli::preset("fig1")));
    const auto f2 = tcd::cli::cmd_spectrum(tcd::cli::to_run_config(tcd::cli::preset("fig2")));
    std::vector<bool> used(f2.rows.size(), false);
    std::size_t paired = 0;
    for (const auto& row : f1.rows) {
        for (std::size_t j = 0; j < f2.rows.size(); ++j) {
            const auto& other = f2.rows[j];
            if (!used[j] && std::get<double>(other[1]) == -std::get<double>(row[1]) &&
                std::get<double>(other[4]) == std::get<double>(row[4]) &&
                std::get<double>(other[5]) == std::get<double>(row[5])) {
                used[j] = true;
                ++paired;
                break;
            }
        }
    }
    const bool figures = paired == f1.rows.size() && paired == f2.rows.size();
    return {unmatched == 0 && worst <= 1e-13 && figures,
            std::to_string(states) + " states, max rel dev = " + fmt(worst) + ", fig1<->fig2 pairs " +
                std::to_string(paired) + "/" + std::to_string(f1.rows.size())};
}

Outcome nonrelativistic() {
    double worst = 0.0;
    int checked = 0;
    for (double sign : {1.0, -1.0}) {
        for (double a : {0.0, 0.5, -0.5, 2.0, -2.0}) {
            const ModelParams p(1.0, a, sign * 1e-3);
            for (int kappa : kappa_span(-5, 5)) {
                const Channel ch = make_channel(p, kappa);
                if (!bound_states_exist(p, ch)) {
                    continue;
                }
                const bool below = ch.kappa_bar() < 0.0;
                for (int n = below ? 1 : 0; n <= 4; ++n) {
                    const double binding = std::abs(energy(p, ch, n, Branch::particle)) - p.mass();
                    const double approx = nonrelativistic_binding(p, ch, n);
                    worst = std::max(worst, std::abs(binding - approx) / binding);
                    ++checked;
                }
            }
        }
    }
    return {worst <= 5e-6, std::to_string(checked) + " states at b/M = 1e-3, max rel dev = " + fmt(worst)};
}

Outcome no_binding_without_b() {
    int checked = 0;
    int found = 0;
    for (double a : {0.0, 0.5, -0.5}) {
        const ModelParams p(1.0, a, 0.0);
        for (int kappa : kappa_span(-5, 5)) {
            const Channel ch = make_channel(p, kappa);
            for (Component c : {Component::upper, Component::lower}) {
                ++checked;
                try {
                    (void)shoot_eigenvalue(p, ch, c, 0);
                    ++found;
                } catch (const shooting_error& e) {
                    if (e.kind() != shooting_failure::no_bracket) {
                        ++found;
                    }
                }
            }
        }
    }
    return {found == 0, std::to_string(checked) + " searches, " + std::to_string(found) + " with a state below M"};
}

Outcome degeneracy() {
    // Keyed by (10|b|, reduced |kb|/n_bar); M = 1 throughout.
    std::map<std::tuple<long, long, long>, double> seen;
    double worst = 0.0;
    int shared = 0;
    for (double b : {1.0, -1.0, 2.5, -2.5}) {
        for (double a : {0.0, 1.0, -1.0}) {
            const ModelParams p(1.0, a, b);
            for (const auto& r : spectrum(p, kappa_span(-9, 9), 15, BranchSelection::both)) {
                if (!r.bound) {
                    continue;
                }
                const long num = std::lround(std::abs(r.kappa_bar));
                const long den = std::lround(r.n_bar);
                const long g = std::gcd(num, den);
                const std::tuple key{std::lround(10.0 * std::abs(b)), num / g, den / g};
                const double e = std::abs(r.energy);
                const auto [it, inserted] = seen.emplace(key, e);
                if (!inserted) {
                    ++shared;
                    worst = std::max(worst, std::abs(e - it->second) / it->second);
                }
            }
        }
    }
    const ModelParams p(1.0, 0.0, 1.0);
    const ModelParams q(1.0, 0.0, -1.0);
    const double left = energy(p, make_channel(p, -1), 1, Branch::particle);
    const double right = energy(q, make_channel(q, 1), 0, Branch::particle);
    const double target = std::sqrt(7.0) / 2.0;
    const double dev = std::max(std::abs(left - target), std::abs(right - target)) / target;
    return {worst <= 1e-13 && dev <= 1e-13 && shared > 0,
            std::to_string(shared) + " degenerate pairs, max rel dev = " + fmt(worst) + ", sqrt(7)/2 dev = " + fmt(dev)};
}

Outcome golden_files() {
    int matched = 0;
    std::string detail;
    const std::vector<std::pair<std::string, std::string>> cases{
        {"spectrum", "fig1"}, {"spectrum", "fig2"}, {"fig3", "fig3a"}, {"fig3", "fig3b"}};
    for (const auto& [command, name] : cases) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = tcd::cli::run({command, "--preset", name}, out, err);
        std::ifstream in(std::string(TCD_GOLDEN_DIR) + "/" + name + ".csv", std::ios::binary);
        std::stringstream golden;
        golden << in.rdbuf();
        if (code == 0 && in && golden.str() == out.str()) {
            ++matched;
        } else {
            detail += " " + name + " differs";
        }
    }
    return {matched == 4, std::to_string(matched) + "/4 presets byte-identical" + detail};
}

} // namespace

int main() {
    const auto grid = oracle_grid();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"analytic vs shooting eigenvalues (|dE| <= 1e-7)", [&] { return oracle_agreement(grid); }},
        {"special states E = +-M with vanishing component (< 1e-8 of peak)", special_states},
        {"energy window M <= |E| < M*", energy_window},
        {"node law", [&] { return node_law(grid); }},
        {"first- and second-order residuals (< 1e-8)", [&] { return residuals(grid); }},
        {"charge conjugation bijection (1e-13)", conjugation},
        {"non-relativistic limit (5e-6)", nonrelativistic},
        {"b = 0 binds nothing", no_binding_without_b},
        {"degeneracy in |kappa_bar|/n_bar (1e-13)", degeneracy},
        {"figure data regression", golden_files},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  %2zu  %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
