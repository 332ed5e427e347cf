#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcd/errors.hpp"
#include "tcd/oracle.hpp"

namespace tcd {

namespace {

// The radial coordinate is r(t) = s * log(1 + e^t): logarithmic for r << s,
// linear for r >> s. A uniform t grid therefore resolves both the power-law
// start near the origin and the exponential tail at constant cost.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }
double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
double inverse_softplus(double x) { return x + std::log(-std::expm1(-x)); }

constexpr double rescale_limit = 1e150;

/// Uniform RK4 segment in t with the coefficients of
///   du/dt = J p,  dp/dt = J (V - lambda) u
/// tabulated at every stage point (2 * steps + 1 of them).
struct Segment {
    double h = 0.0;
    int steps = 0;
    std::vector<double> jac;
    std::vector<double> jac_v;
    std::vector<double> r;

    Segment(double scale, double t_from, double t_to, int n, const EffectivePotential& v) : h((t_to - t_from) / n), steps(n) {
        const int points = 2 * n + 1;
        jac.resize(points);
        jac_v.resize(points);
        r.resize(points);
        for (int k = 0; k < points; ++k) {
            const double t = t_from + 0.5 * h * k;
            r[k] = scale * softplus(t);
            jac[k] = scale * logistic(t);
            jac_v[k] = jac[k] * v(r[k]);
        }
    }

    struct State {
        double u;
        double p;
        int nodes;
    };

    State run(double u, double p, double lambda) const {
        int nodes = 0;
        const double hh = 0.5 * h;
        for (int i = 0; i < steps; ++i) {
            const int k0 = 2 * i;
            const auto rhs = [&](int k, double uu, double pp) {
                return std::array<double, 2>{jac[k] * pp, (jac_v[k] - jac[k] * lambda) * uu};
            };
            const auto k1 = rhs(k0, u, p);
            const auto k2 = rhs(k0 + 1, u + hh * k1[0], p + hh * k1[1]);
            const auto k3 = rhs(k0 + 1, u + hh * k2[0], p + hh * k2[1]);
            const auto k4 = rhs(k0 + 2, u + h * k3[0], p + h * k3[1]);
            const double u_next = u + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            const double p_next = p + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
            if ((u_next > 0.0 && u < 0.0) || (u_next < 0.0 && u > 0.0)) {
                ++nodes;
            }
            u = u_next;
            p = p_next;
            const double size = std::abs(u) + std::abs(p);
            if (size > rescale_limit) {
                u /= size;
                p /= size;
            }
        }
        return {u, p, nodes};
    }
};

struct Problem {
    EffectivePotential potential;
    double frobenius; // regular exponent 1/2 + sqrt(centrifugal + 1/4)
    double r_min;

    // Regular solution at r_min, scaled by r_min^-frobenius.
    std::array<double, 2> start(double lambda) const {
        const double s = frobenius;
        const double c = potential.coulomb();
        std::array<double, 8> a{};
        a[0] = 1.0;
        for (int j = 1; j < static_cast<int>(a.size()); ++j) {
            const double prev2 = j >= 2 ? a[j - 2] : 0.0;
            a[j] = (c * a[j - 1] - lambda * prev2) / (j * (2.0 * s + j - 1.0));
        }
        double poly = 0.0;
        double dpoly = 0.0;
        for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) {
            poly = poly * r_min + a[j];
            if (j > 0) {
                dpoly = dpoly * r_min + j * a[j];
            }
        }
        return {poly, s * poly / r_min + dpoly};
    }
};

struct Layout {
    double scale;
    double t_min;
    double t_max;
    double r_max;
};

Layout make_layout(double r_min, double r_max) {
    const double scale = r_max / 30.0;
    return {scale, inverse_softplus(r_min / scale), inverse_softplus(r_max / scale), r_max};
}

int outward_nodes(const Problem& pr, const Layout& lay, int steps, double lambda) {
    const Segment seg(lay.scale, lay.t_min, lay.t_max, steps, pr.potential);
    const auto y0 = pr.start(lambda);
    return seg.run(y0[0], y0[1], lambda).nodes;
}

// Counting variant that reuses one tabulated segment for many lambdas.
struct Counter {
    const Problem& pr;
    Segment seg;
    Counter(const Problem& p, const Layout& lay, int steps) : pr(p), seg(lay.scale, lay.t_min, lay.t_max, steps, p.potential) {}
    int operator()(double lambda) const {
        const auto y0 = pr.start(lambda);
        return seg.run(y0[0], y0[1], lambda).nodes;
    }
};

struct Matched {
    Segment outward;
    Segment inward;
    const Problem& pr;
    double r_match;

    Matched(const Problem& p, const Layout& lay, double t_match, int out_steps, int in_steps)
        : outward(lay.scale, lay.t_min, t_match, out_steps, p.potential),
          inward(lay.scale, lay.t_max, t_match, in_steps, p.potential), pr(p), r_match(lay.scale * softplus(t_match)) {}

    struct Eval {
        double wronskian;
        int nodes;
    };

    Eval operator()(double lambda) const {
        const auto y0 = pr.start(lambda);
        const auto out = outward.run(y0[0], y0[1], lambda);
        const double k = std::sqrt(-lambda);
        const double r_end = inward.r.front();
        const double nu = -pr.potential.coulomb() / (2.0 * k);
        const auto in = inward.run(1.0, nu / r_end - k, lambda);
        const double rm = r_match;
        const double num = rm * (out.p * in.u - in.p * out.u);
        const double den = std::hypot(out.u, rm * out.p) * std::hypot(in.u, rm * in.p);
        return {num / den, out.nodes + in.nodes};
    }
};

double turning_point(const EffectivePotential& v, double lambda, double r_min, double r_max) {
    // lambda r^2 - coulomb r - centrifugal = 0, outer root.
    const double c = v.coulomb();
    const double disc = c * c + 4.0 * lambda * v.centrifugal();
    double r = 0.25 * r_max;
    if (c < 0.0 && disc >= 0.0) {
        r = (c - std::sqrt(disc)) / (2.0 * lambda);
    }
    return std::clamp(r, 2.0 * r_min, 0.5 * r_max);
}

[[noreturn]] void fail(shooting_failure kind, const std::string& msg) { throw shooting_error(kind, msg); }

struct Bracket {
    double lo;
    double hi;
};

// Bisection on the node count: keeps count(lo) <= n < count(hi).
Bracket bisect_nodes(const Counter& count, Bracket br, int n, double rel_width, int max_iter = 200) {
    for (int it = 0; it < max_iter; ++it) {
        if (br.hi - br.lo <= rel_width * std::abs(br.hi)) {
            return br;
        }
        const double mid = 0.5 * (br.lo + br.hi);
        if (count(mid) <= n) {
            br.lo = mid;
        } else {
            br.hi = mid;
        }
    }
    return br;
}

// Illinois regula falsi on the matching Wronskian. Falls back to node-count
// bisection on the outward solution when the end signs do not differ.
double refine(const Matched& match, const Counter* count, Bracket br, int n, double tol, double& residual) {
    double fa = match(br.lo).wronskian;
    double fb = match(br.hi).wronskian;
    if (!(fa * fb < 0.0)) {
        if (count == nullptr) {
            fail(shooting_failure::not_converged, "matching function does not change sign across the bracket");
        }
        for (int it = 0; it < 200 && br.hi - br.lo > tol; ++it) {
            const double mid = 0.5 * (br.lo + br.hi);
            ((*count)(mid) <= n ? br.lo : br.hi) = mid;
        }
        const double x = 0.5 * (br.lo + br.hi);
        residual = std::abs(match(x).wronskian);
        return x;
    }
    double x = br.lo;
    for (int it = 0; it < 200; ++it) {
        x = (br.lo * fb - br.hi * fa) / (fb - fa);
        const double fx = match(x).wronskian;
        if (fx == 0.0) {
            residual = 0.0;
            return x;
        }
        if (fx * fb < 0.0) {
            br.lo = br.hi;
            fa = fb;
            br.hi = x;
            fb = fx;
        } else {
            br.hi = x;
            fb = fx;
            fa *= 0.5;
        }
        if (std::abs(br.hi - br.lo) <= tol) {
            residual = std::abs(fx);
            return x;
        }
    }
    fail(shooting_failure::not_converged, "secant refinement hit the iteration cap");
}

} // namespace

void ShootingConfig::validate() const {
    if (!(lambda_bracket.first < lambda_bracket.second)) {
        throw std::invalid_argument("lambda bracket must be ordered");
    }
    if (!(lambda_bracket.second < 0.0)) {
        throw std::invalid_argument("bound-state search needs lambda < 0");
    }
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (step_count < 16) {
        throw std::invalid_argument("step_count must be at least 16");
    }
    if (r_min && !(*r_min > 0.0)) {
        throw std::invalid_argument("r_min must be positive");
    }
    if (r_min && r_max && !(*r_min < *r_max)) {
        throw std::invalid_argument("r_min must be below r_max");
    }
    if (match_point && ((r_min && !(*match_point > *r_min)) || (r_max && !(*match_point < *r_max)))) {
        throw std::invalid_argument("match point must lie inside (r_min, r_max)");
    }
}

ShootingConfig default_shooting_config(const ModelParams& params, const Channel& channel, Component) {
    ShootingConfig config;
    const double b = params.b();
    const double kb = channel.kappa_bar();
    if (b == 0.0 || kb == 0.0) {
        const double m2 = params.mass() * params.mass();
        config.lambda_bracket = {-m2, -1e-6 * m2};
    } else {
        // The lowest singular-Coulomb level sits above -(2 b kb)^2.
        const double scale = b * b * kb * kb;
        config.lambda_bracket = {-4.0 * scale * (1.0 + 1e-3), -1e-6 * scale};
    }
    return config;
}

EigenResult shoot_eigenvalue(const ModelParams& params, const Channel& channel, Component component, int node_target) {
    return shoot_eigenvalue(params, channel, component, node_target,
                            default_shooting_config(params, channel, component));
}

EigenResult shoot_eigenvalue(const ModelParams& params, const Channel& channel, Component component, int node_target,
                             const ShootingConfig& config) {
    config.validate();
    if (node_target < 0) {
        throw std::invalid_argument("node target must be nonnegative");
    }
    const EffectivePotential potential(params, channel, component);
    const double lambda_lo = config.lambda_bracket.first;
    const double lambda_cap = config.lambda_bracket.second;

    Problem pr{potential, 0.5 + std::sqrt(std::max(potential.centrifugal() + 0.25, 0.0)),
               config.r_min.value_or(1e-6 / std::sqrt(-lambda_lo))};
    // 30 decay lengths past the point where the Coulomb power r^nu of the
    // tail r^nu e^(-k r) stops competing with the exponential.
    const auto box_for = [&](double lambda) {
        const double k = std::sqrt(-lambda);
        const double nu = std::max(-potential.coulomb() / (2.0 * k), 0.0);
        return (30.0 + 2.0 * nu) / k;
    };
    const auto r_max_for = [&](double lambda) { return config.r_max ? *config.r_max : box_for(lambda); };
    const int steps = config.step_count;

    // Move the upper end toward zero until it holds more than node_target
    // Dirichlet eigenvalues; r_max follows the upper end so the box is large
    // enough for every lambda in the bracket.
    double hi = lambda_cap;
    if (!config.r_max) {
        hi = std::min(lambda_lo / 4.0, lambda_cap);
    }
    Layout layout{};
    bool found = false;
    for (;;) {
        layout = make_layout(pr.r_min, r_max_for(hi));
        if (outward_nodes(pr, layout, steps, hi) > node_target) {
            found = true;
            break;
        }
        if (hi >= lambda_cap) {
            break;
        }
        hi = std::min(hi / 4.0, lambda_cap);
    }
    if (!found) {
        fail(shooting_failure::no_bracket, "no eigenvalue with " + std::to_string(node_target) +
                                               " nodes below lambda = " + std::to_string(lambda_cap));
    }

    Bracket br{lambda_lo, hi};
    {
        const Counter count(pr, layout, steps);
        if (count(lambda_lo) > node_target) {
            fail(shooting_failure::no_bracket, "lower bracket end already exceeds the node target");
        }
        br = bisect_nodes(count, br, node_target, 1e-6);
    }

    // Shrink (or grow) the box to 30 decay lengths of the bracketed level.
    for (int pass = 0; pass < 6 && config.adapt_r_max && !config.r_max; ++pass) {
        const double estimate = 0.5 * (br.lo + br.hi);
        const double wanted = box_for(estimate);
        if (std::abs(wanted - layout.r_max) <= 0.05 * wanted) {
            break;
        }
        layout = make_layout(pr.r_min, 1.02 * wanted);
        const Counter count(pr, layout, steps);
        double width = std::max(br.hi - br.lo, 1e-6 * std::abs(estimate));
        Bracket wide{estimate - width, std::min(estimate + width, 0.5 * estimate)};
        for (int grow = 0; grow < 60; ++grow) {
            const bool lo_ok = count(wide.lo) <= node_target;
            const bool hi_ok = count(wide.hi) > node_target;
            if (lo_ok && hi_ok) {
                break;
            }
            width *= 2.0;
            if (!lo_ok) {
                wide.lo = std::max(estimate - width, lambda_lo);
            }
            if (!hi_ok) {
                wide.hi = std::min(estimate + width, 0.5 * estimate);
            }
        }
        if (!(count(wide.lo) <= node_target && count(wide.hi) > node_target)) {
            fail(shooting_failure::not_converged, "lost the eigenvalue bracket while resizing the box");
        }
        br = bisect_nodes(count, wide, node_target, 1e-6);
    }

    const double lambda_guess = 0.5 * (br.lo + br.hi);
    const double r_match = config.match_point.value_or(turning_point(potential, lambda_guess, pr.r_min, layout.r_max));
    if (!(r_match > pr.r_min && r_match < layout.r_max)) {
        throw std::invalid_argument("match point lies outside (r_min, r_max)");
    }
    const double t_match = inverse_softplus(r_match / layout.scale);

    // Richardson over N, 2N, 4N ... with nested grids.
    const double t_span = layout.t_max - layout.t_min;
    int out_steps = std::max(8, static_cast<int>(std::lround(steps * (t_match - layout.t_min) / t_span)));
    int in_steps = std::max(8, static_cast<int>(std::lround(steps * (layout.t_max - t_match) / t_span)));

    double residual = 0.0;
    const double inner_tol = std::min(0.1 * config.tolerance, 1e-13 * std::abs(lambda_guess));
    double previous = 0.0;
    {
        const Counter count(pr, layout, steps);
        const Matched match(pr, layout, t_match, out_steps, in_steps);
        previous = refine(match, &count, br, node_target, inner_tol, residual);
    }

    EigenResult result;
    result.r_min = pr.r_min;
    result.r_max = layout.r_max;
    result.match_point = r_match;
    double extrapolated = previous;
    double estimate = std::numeric_limits<double>::infinity();
    int nodes = -1;
    for (int d = 0; d < std::max(config.max_doublings, 1); ++d) {
        out_steps *= 2;
        in_steps *= 2;
        const Matched match(pr, layout, t_match, out_steps, in_steps);
        const double delta = std::max(1e3 * std::abs(br.hi - br.lo), 1e-7 * std::abs(previous));
        Bracket local{previous - delta, previous + delta};
        for (int grow = 0; grow < 40 && !(match(local.lo).wronskian * match(local.hi).wronskian < 0.0); ++grow) {
            local.lo -= delta * (1 << std::min(grow, 20));
            local.hi += delta * (1 << std::min(grow, 20));
            local.lo = std::max(local.lo, lambda_lo);
            local.hi = std::min(local.hi, 0.5 * previous);
        }
        const double current = refine(match, nullptr, local, node_target, inner_tol, residual);
        estimate = std::abs(current - previous) / 15.0;
        extrapolated = current + (current - previous) / 15.0;
        nodes = match(current).nodes;
        previous = current;
        result.step_count = out_steps + in_steps;
        if (estimate <= config.tolerance) {
            break;
        }
    }

    if (nodes != node_target) {
        fail(shooting_failure::node_mismatch, "matched solution has " + std::to_string(nodes) + " nodes, expected " +
                                                  std::to_string(node_target));
    }

    result.lambda = extrapolated;
    result.node_count = nodes;
    result.residual = residual;
    result.error_estimate = estimate;
    result.converged = estimate <= config.tolerance;
    const double e2 = extrapolated + params.mass() * params.mass() + params.b() * params.b();
    const double e = e2 > 0.0 ? std::sqrt(e2) : std::numeric_limits<double>::quiet_NaN();
    result.energy_pair = {e, -e};
    if (!result.converged) {
        fail(shooting_failure::not_converged, "Richardson error estimate " + std::to_string(estimate) +
                                                  " above tolerance " + std::to_string(config.tolerance));
    }
    return result;
}

} // namespace tcd
