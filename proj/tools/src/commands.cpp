#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcd/analytic.hpp"
#include "tcd/cli/run.hpp"
#include "tcd/errors.hpp"
#include "tcd/nodes.hpp"
#include "tcd/oracle.hpp"
#include "tcd/quadrature.hpp"

namespace tcd::cli {

namespace {

Cell opt_cell(const std::optional<int>& v) {
    if (v) {
        return static_cast<long long>(*v);
    }
    return std::monostate{};
}

ModelParams params_of(const RunConfig& c, double a) {
    try {
        return {c.mass, a, c.b};
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
}

void require_binding_potential(const ModelParams& p) {
    if (p.b() == 0.0) {
        throw usage_error("b = 0: the tensor potential has no bound states (need b * (kappa + a) < 0)");
    }
}

std::string existence_condition(const ModelParams& p, const Channel& ch) {
    std::ostringstream s;
    s << "no bound states for kappa = " << ch.kappa() << ", a = " << format_number(p.a())
      << ", b = " << format_number(p.b()) << ": kappa_bar = " << format_number(ch.kappa_bar())
      << " must satisfy b * kappa_bar < 0 and |kappa_bar| > 1/2";
    return s.str();
}

Branch single_branch(BranchSelection sel) {
    if (sel == BranchSelection::both) {
        throw usage_error("this command needs branch plus or minus");
    }
    return sel == BranchSelection::plus ? Branch::particle : Branch::antiparticle;
}

/// State with Laguerre degree n_g in g; n_g = 0 below kappa_bar = -1/2 is the E = +M state.
BoundState state_for(const ModelParams& p, const Channel& ch, int n_g, Branch branch) {
    if (ch.kappa_bar() < 0.0 && n_g == 0) {
        if (branch == Branch::antiparticle) {
            throw usage_error("the n_g = 0 state exists on the plus branch only (E = +M)");
        }
        return special_state(p, ch);
    }
    return bound_state(p, ch, n_g, branch);
}

double default_r_last(const BoundState& s) {
    const double x_max = 4.0 * (s.level() + std::abs(s.channel.kappa_bar()) + 1.0) + 80.0;
    return x_max / (2.0 * s.gamma);
}

} // namespace

Table cmd_spectrum(const RunConfig& c) {
    const ModelParams p = params_of(c, c.a);
    require_binding_potential(p);
    const auto kappas = kappa_span(c.kappa_min.value_or(-10), c.kappa_max.value_or(10));
    const auto rows = c.conjugate ? conjugate_spectrum(p, kappas, c.n_max, c.branch)
                                  : spectrum(p, kappas, c.n_max, c.branch);
    Table t;
    t.columns = {"kappa", "kappa_bar", "n_g", "n_f", "n_bar", "E", "E_over_M", "is_special", "bound_flag"};
    for (const auto& r : rows) {
        t.rows.push_back({static_cast<long long>(r.kappa), r.kappa_bar, opt_cell(r.n_g), opt_cell(r.n_f), r.n_bar,
                          r.energy, r.e_over_m, r.is_special, r.bound});
    }
    return t;
}

Table cmd_fig3(const RunConfig& c) {
    const Branch branch = single_branch(c.branch);
    if (c.n_g < 0) {
        throw usage_error("n-g must be nonnegative");
    }
    Table t;
    t.columns = {"a", "kappa", "kappa_bar", "E_over_M", "bound_flag"};
    for (double a : c.a_grid) {
        const ModelParams p = params_of(c, a);
        require_binding_potential(p);
        for (int kappa : kappa_span(c.kappa_min.value_or(-12), c.kappa_max.value_or(12))) {
            const Channel ch = make_channel(p, kappa);
            const double kb = ch.kappa_bar();
            if (kb < c.kbar_min || kb > c.kbar_max) {
                continue;
            }
            Cell e_over_m = std::monostate{};
            const bool bound = bound_states_exist(p, ch);
            if (bound) {
                e_over_m = state_for(p, ch, c.n_g, branch).energy / p.mass();
            }
            t.rows.push_back({a, static_cast<long long>(kappa), kb, e_over_m, bound});
        }
    }
    return t;
}

Table cmd_wavefunction(const RunConfig& c) {
    if (!c.kappa) {
        throw usage_error("wavefunction needs --kappa");
    }
    const ModelParams p = params_of(c, c.a);
    if (*c.kappa == 0) {
        throw usage_error("kappa must be nonzero");
    }
    const Channel ch = make_channel(p, *c.kappa);
    if (!bound_states_exist(p, ch)) {
        throw usage_error(existence_condition(p, ch));
    }
    const BoundState state = c.special ? special_state(p, ch) : state_for(p, ch, c.n_g, single_branch(c.branch));
    const Wavefunctions wf = wavefunctions(p, state);

    const double r_first = c.r_first.value_or(1e-4 / state.gamma);
    const double r_last = c.r_last.value_or(default_r_last(state));
    if (!(r_first > 0.0 && r_last > r_first)) {
        throw usage_error("grid needs 0 < r-first < r-last");
    }
    const auto grid = c.grid == "log" ? log_grid(r_first, r_last, c.points) : linear_grid(r_first, r_last, c.points);
    const RadialSamples s = sample(wf, grid);

    const double r_far = std::max(r_last, default_r_last(state));
    const double norm = integrate_adaptive(
        [&](double r) {
            const double g = wf.g.value(r);
            const double f = wf.f.value(r);
            return g * g + f * f;
        },
        0.0, r_far);

    Table t;
    t.meta = {{"kappa", static_cast<long long>(ch.kappa())},
              {"kappa_bar", ch.kappa_bar()},
              {"n_g", opt_cell(state.n_g)},
              {"n_f", opt_cell(state.n_f)},
              {"E", state.energy},
              {"gamma", state.gamma},
              {"nodes_g", static_cast<long long>(s.node_count_g)},
              {"nodes_f", static_cast<long long>(s.node_count_f)},
              {"norm", norm}};
    t.columns = {"r", "g", "f"};
    for (std::size_t i = 0; i < s.size(); ++i) {
        t.rows.push_back({s.r[i], s.g[i], s.f[i]});
    }
    return t;
}

namespace {

/// |E| of the state with the given level from the second-order equations alone.
double oracle_energy(const ModelParams& p, const Channel& ch, int level) {
    EigenResult res;
    if (ch.kappa_bar() < 0.0) {
        res = shoot_eigenvalue(p, ch, Component::upper, level);
    } else if (level == 0) {
        res = shoot_eigenvalue(p, ch, Component::lower, 0);
    } else {
        res = shoot_eigenvalue(p, ch, Component::upper, level - 1);
    }
    return res.energy_pair.first;
}

double first_order_residual(const ModelParams& p, const Wavefunctions& wf) {
    const double kb = wf.state.channel.kappa_bar();
    const double e = wf.state.energy;
    const double m = p.mass();
    double worst = 0.0;
    double scale = 0.0;
    for (double r : linear_grid(0.01, 30.0, 600)) {
        const double g = wf.g.value(r);
        const double f = wf.f.value(r);
        const double w = kb / r + p.b();
        const double r1 = wf.g.derivative(r) + w * g - (m + e) * f;
        const double r2 = wf.f.derivative(r) - w * f - (m - e) * g;
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
        scale = std::max({scale, std::abs(g), std::abs(f)});
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

struct VerifyPoint {
    double mass;
    double a;
    double b;
    std::vector<int> kappas;
    int n_max;
};

void verify_point(const VerifyPoint& pt, const RunConfig& c, VerifyOutcome& out) {
    const ModelParams p(pt.mass, pt.a, pt.b);
    const auto fail = [&](const std::string& what) {
        ++out.failures;
        if (out.first_failures.size() < 10) {
            out.first_failures.push_back(what);
        }
    };
    const auto label = [&](int kappa, const std::string& tail) {
        std::ostringstream s;
        s << "M=" << format_number(pt.mass) << " a=" << format_number(pt.a) << " b=" << format_number(pt.b)
          << " kappa=" << kappa << ' ' << tail;
        return s.str();
    };
    const Cell none = std::monostate{};

    if (pt.b == 0.0) {
        for (int kappa : pt.kappas) {
            const Channel ch = make_channel(p, kappa);
            std::string verdict = "no bound states";
            for (Component comp : {Component::upper, Component::lower}) {
                try {
                    const auto res = shoot_eigenvalue(p, ch, comp, 0);
                    verdict = "unexpected bound state";
                    fail(label(kappa, "bound state at E = " + format_number(res.energy_pair.first)));
                    break;
                } catch (const shooting_error& e) {
                    if (e.kind() != shooting_failure::no_bracket) {
                        verdict = "oracle failure";
                        fail(label(kappa, e.what()));
                        break;
                    }
                }
            }
            ++out.checked;
            out.table.rows.push_back({pt.mass, pt.a, pt.b, static_cast<long long>(kappa), ch.kappa_bar(), none, none,
                                      none, none, none, none, none, none, verdict});
        }
        return;
    }

    for (const auto& row : spectrum(p, pt.kappas, pt.n_max, BranchSelection::both)) {
        const Channel ch = make_channel(p, row.kappa);
        if (!row.bound) {
            out.table.rows.push_back({pt.mass, pt.a, pt.b, static_cast<long long>(row.kappa), row.kappa_bar, none,
                                      none, none, none, none, none, none, none, std::string("unbound channel")});
            continue;
        }
        if (row.branch == Branch::antiparticle && !row.is_special) {
            continue;
        }
        const int level = ch.kappa_bar() < 0.0 ? row.n_g.value_or(0) : row.n_f.value_or(0);
        const double analytic = std::abs(row.energy) + (c.perturb ? 1e-3 * pt.mass : 0.0);
        const BoundState state = row.is_special ? special_state(p, ch) : bound_state(p, ch, *row.n_g, row.branch);
        const Wavefunctions wf = wavefunctions(p, state);
        const RadialSamples s = sample(wf, log_grid(1e-4 / state.gamma, default_r_last(state), 2001));
        const double residual = first_order_residual(p, wf);
        const bool nodes_ok =
            s.node_count_g == state.n_g.value_or(0) && s.node_count_f == state.n_f.value_or(0);

        Cell oracle = std::monostate{};
        Cell delta = std::monostate{};
        std::string verdict = "pass";
        try {
            const double e = oracle_energy(p, ch, level);
            const double d = std::abs(e - analytic);
            oracle = e;
            delta = d;
            out.max_energy_deviation = std::max(out.max_energy_deviation, d);
            if (!(d <= c.tolerance * pt.mass)) {
                verdict = "fail: energy";
            }
        } catch (const shooting_error& e) {
            verdict = std::string("fail: oracle ") + e.what();
        }
        out.max_residual = std::max(out.max_residual, residual);
        if (verdict == "pass" && !(residual < 1e-8)) {
            verdict = "fail: residual";
        }
        if (verdict == "pass" && !nodes_ok) {
            verdict = "fail: nodes";
        }
        if (verdict != "pass") {
            fail(label(row.kappa, "level " + std::to_string(level) + ' ' + verdict));
        }
        ++out.checked;
        out.table.rows.push_back({pt.mass, pt.a, pt.b, static_cast<long long>(row.kappa), row.kappa_bar,
                                  opt_cell(row.n_g), opt_cell(row.n_f), analytic, oracle, delta, residual,
                                  static_cast<long long>(s.node_count_g), static_cast<long long>(s.node_count_f),
                                  verdict});
    }
}

} // namespace

VerifyOutcome cmd_verify(const RunConfig& c) {
    VerifyOutcome out;
    out.table.columns = {"mass",     "a",        "b",       "kappa",    "kappa_bar", "n_g",     "n_f",
                         "E_analytic", "E_oracle", "delta_E", "residual", "nodes_g",   "nodes_f", "verdict"};
    const auto kappas = kappa_span(c.kappa_min.value_or(-5), c.kappa_max.value_or(5));
    if (!c.matrix) {
        params_of(c, c.a);
        verify_point({c.mass, c.a, c.b, kappas, c.n_max}, c, out);
        return out;
    }
    for (double b : {0.5, 1.0, 2.0, -0.5, -1.0, -2.0}) {
        for (double a : {0.0, 0.5, -0.5, 2.0, -2.0}) {
            verify_point({1.0, a, b, kappas, c.n_max}, c, out);
        }
    }
    return out;
}

} // namespace tcd::cli
