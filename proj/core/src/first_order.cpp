#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "tcd/errors.hpp"
#include "tcd/nodes.hpp"
#include "tcd/oracle.hpp"

namespace tcd {

namespace {

using Vec2 = std::array<double, 2>;

constexpr double overflow_limit = 1e200;

struct CoupledSystem {
    double kb;
    double b;
    double m_plus_e;
    double m_minus_e;

    Vec2 operator()(double r, const Vec2& y) const {
        const double w = kb / r + b;
        return {-w * y[0] + m_plus_e * y[1], w * y[1] + m_minus_e * y[0]};
    }
};

Vec2 rk4_step(const CoupledSystem& sys, double r, const Vec2& y, double h) {
    const auto axpy = [](const Vec2& a, double s, const Vec2& d) { return Vec2{a[0] + s * d[0], a[1] + s * d[1]}; };
    const Vec2 k1 = sys(r, y);
    const Vec2 k2 = sys(r + 0.5 * h, axpy(y, 0.5 * h, k1));
    const Vec2 k3 = sys(r + 0.5 * h, axpy(y, 0.5 * h, k2));
    const Vec2 k4 = sys(r + h, axpy(y, h, k3));
    return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

// Regular solution at r, divided by r^|kb| (two Frobenius terms per component).
Vec2 regular_start(const CoupledSystem& sys, double r) {
    const double kb = sys.kb;
    const double b = sys.b;
    if (kb < 0.0) {
        const double c = sys.m_minus_e / (1.0 - 2.0 * kb);
        const double f1 = b * kb / (1.0 - kb);
        return {1.0 - b * r, c * r * (1.0 + f1 * r)};
    }
    const double d = sys.m_plus_e / (1.0 + 2.0 * kb);
    const double g1 = b * kb / (1.0 + kb);
    return {d * r * (1.0 + g1 * r), 1.0 + b * r};
}

} // namespace

FirstOrderResult integrate_first_order(const ModelParams& params, const Channel& channel, double energy,
                                       const FirstOrderConfig& config, double decay_threshold) {
    if (!(config.r_min > 0.0 && config.r_max > config.r_min)) {
        throw std::invalid_argument("first-order integration needs 0 < r_min < r_max");
    }
    if (!(config.tolerance > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (channel.kappa_bar() == 0.0) {
        throw zero_kappa_bar();
    }
    const CoupledSystem sys{channel.kappa_bar(), params.b(), params.mass() + energy, params.mass() - energy};

    FirstOrderResult out;
    auto& s = out.samples;
    double r = config.r_min;
    Vec2 y = regular_start(sys, r);
    s.r.push_back(r);
    s.g.push_back(y[0]);
    s.f.push_back(y[1]);

    const double span = config.r_max - config.r_min;
    const double h_max = span / 400.0;
    double h = std::min(0.01 * r, h_max);
    double peak = std::hypot(y[0], y[1]);

    while (r < config.r_max && out.steps < config.max_steps) {
        h = std::min({h, h_max, config.r_max - r});
        const Vec2 full = rk4_step(sys, r, y, h);
        const Vec2 half = rk4_step(sys, r + 0.5 * h, rk4_step(sys, r, y, 0.5 * h), 0.5 * h);
        const double scale = std::max({peak, std::abs(half[0]), std::abs(half[1])});
        const double err = std::max(std::abs(half[0] - full[0]), std::abs(half[1] - full[1])) / (15.0 * scale);
        if (err > config.tolerance && h > 1e-14 * r) {
            h *= std::max(0.1, 0.9 * std::pow(config.tolerance / err, 0.2));
            continue;
        }
        y = {half[0] + (half[0] - full[0]) / 15.0, half[1] + (half[1] - full[1]) / 15.0};
        r += h;
        ++out.steps;
        s.r.push_back(r);
        s.g.push_back(y[0]);
        s.f.push_back(y[1]);
        const double env = std::hypot(y[0], y[1]);
        peak = std::max(peak, env);
        if (!std::isfinite(env) || env > overflow_limit) {
            out.overflow = true;
            break;
        }
        const double grow = err > 0.0 ? 0.9 * std::pow(config.tolerance / err, 0.2) : 4.0;
        h *= std::clamp(grow, 0.2, 4.0);
    }

    std::size_t arg_peak = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double env = std::hypot(s.g[i], s.f[i]);
        out.peak_g = std::max(out.peak_g, std::abs(s.g[i]));
        out.peak_f = std::max(out.peak_f, std::abs(s.f[i]));
        if (env > best) {
            best = env;
            arg_peak = i;
        }
    }
    out.peak = best;
    std::size_t arg_min = arg_peak;
    double lowest = best;
    for (std::size_t i = arg_peak; i < s.size(); ++i) {
        const double env = std::hypot(s.g[i], s.f[i]);
        if (env < lowest) {
            lowest = env;
            arg_min = i;
        }
    }
    out.decay_depth = best > 0.0 ? lowest / best : 0.0;
    out.tail_ratio = best > 0.0 ? std::hypot(s.g.back(), s.f.back()) / best : 0.0;
    out.bound = !out.overflow && out.decay_depth < decay_threshold;

    // Near the minimum the decaying and the growing solution cancel and can
    // fake a sign change; stop counting halfway down (in log) to it.
    std::size_t arg_cut = arg_min;
    const double cut = std::sqrt(out.decay_depth) * best;
    for (std::size_t i = arg_peak; i < arg_min; ++i) {
        if (std::hypot(s.g[i], s.f[i]) <= cut) {
            arg_cut = i;
            break;
        }
    }
    const std::span<const double> g_valid(s.g.data(), arg_cut + 1);
    const std::span<const double> f_valid(s.f.data(), arg_cut + 1);
    s.node_count_g = count_nodes(g_valid).nodes;
    s.node_count_f = count_nodes(f_valid).nodes;
    double acc = 0.0;
    for (std::size_t i = 1; i <= arg_min; ++i) {
        const double left = s.g[i - 1] * s.g[i - 1] + s.f[i - 1] * s.f[i - 1];
        const double right = s.g[i] * s.g[i] + s.f[i] * s.f[i];
        acc += 0.5 * (left + right) * (s.r[i] - s.r[i - 1]);
    }
    s.l2_norm = std::sqrt(acc);
    return out;
}

} // namespace tcd
