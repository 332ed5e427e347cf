#include "tcd/analytic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "tcd/errors.hpp"
#include "tcd/nodes.hpp"
#include "tcd/quadrature.hpp"

namespace tcd {

namespace {

// Rules are reused across states sharing a weight exponent.
const GaussLaguerreRule& cached_rule(double alpha) {
    static std::mutex mutex;
    static std::map<double, std::unique_ptr<GaussLaguerreRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[alpha];
    if (!slot) {
        slot = std::make_unique<GaussLaguerreRule>(default_gauss_laguerre_nodes, alpha);
    }
    return *slot;
}

std::string describe(const ModelParams& params, const Channel& channel) {
    return "b = " + std::to_string(params.b()) + ", kappa = " + std::to_string(channel.kappa()) +
           ", kappa_bar = " + std::to_string(channel.kappa_bar());
}

// Throws the dedicated error for channels that cannot host a bound state.
void require_bound(const ModelParams& params, const Channel& channel) {
    if (channel.kappa_bar() == 0.0 && channel.a() == params.a()) {
        throw zero_kappa_bar();
    }
    if (!bound_states_exist(params, channel)) {
        throw unbound_channel("no bound states (need b*kappa_bar < 0 and |kappa_bar| > 1/2): " +
                              describe(params, channel));
    }
}

// Level index n (n_g for kb < 0, n_f = n_g + 1 for kb > 0) -> energy. n_bar is
// formed as n + |kb|, which equals n_g + 1/2 + |1/2 + kb| and makes the value
// bit-identical for conjugate partners.
double energy_from_level(const ModelParams& params, double abs_kb, int level, Branch branch) {
    const double n_bar = level + abs_kb;
    const double ratio = abs_kb / n_bar;
    const double b = params.b();
    const double m = params.mass();
    return sign_of(branch) * std::sqrt(m * m + b * b * (1.0 - ratio * ratio));
}

int level_of(const Channel& channel, int n_g) { return channel.kappa_bar() < 0.0 ? n_g : n_g + 1; }

} // namespace

double SingularCoulombMap::energy_squared(const ModelParams& params) const noexcept {
    return params.mass() * params.mass() + params.b() * params.b() + 2.0 * m_map * epsilon;
}

SingularCoulombMap map_to_singular_coulomb(const ModelParams& params, const Channel& channel, Component component,
                                           int n, double m_map) {
    const double kb = channel.kappa_bar();
    if (!(std::abs(kb) > 0.5)) {
        throw unbound_channel("singular Coulomb mapping needs |kappa_bar| > 1/2: " + describe(params, channel));
    }
    if (n < 0) {
        throw std::invalid_argument("radial quantum number must be nonnegative");
    }
    if (!(m_map > 0.0)) {
        throw std::invalid_argument("bookkeeping mass must be positive");
    }
    SingularCoulombMap map{};
    map.component = component;
    map.m_map = m_map;
    map.n = n;
    map.l = 0;
    map.Z = params.b() * kb / m_map;
    map.beta = component == Component::upper ? kb * (kb + 1.0) : kb * (kb - 1.0);
    map.S = std::sqrt(map.beta + (map.l + 0.5) * (map.l + 0.5));
    const double denom = n + 0.5 + map.S;
    map.epsilon = -m_map * map.Z * map.Z / (2.0 * denom * denom);
    return map;
}

double energy(const ModelParams& params, const Channel& channel, int n_g, Branch branch) {
    require_bound(params, channel);
    if (n_g < 0) {
        throw std::invalid_argument("n_g must be nonnegative");
    }
    if (n_g == 0 && channel.kappa_bar() < 0.0) {
        throw special_state_required("n_g = 0 with kappa_bar < -1/2 is the E = +M special state");
    }
    return energy_from_level(params, std::abs(channel.kappa_bar()), level_of(channel, n_g), branch);
}

double energy_factored(const ModelParams& params, const Channel& channel, int n_g, Branch branch) {
    require_bound(params, channel);
    if (n_g < 0) {
        throw std::invalid_argument("n_g must be nonnegative");
    }
    const double kb = channel.kappa_bar();
    const double b2 = params.b() * params.b();
    const double m2 = params.mass() * params.mass();
    double fraction = 0.0;
    if (kb < 0.0) {
        const double n = n_g;
        fraction = n * (n - 2.0 * kb) / ((n - kb) * (n - kb));
    } else {
        const double n1 = n_g + 1.0;
        fraction = n1 * (n1 + 2.0 * kb) / ((n1 + kb) * (n1 + kb));
    }
    return sign_of(branch) * std::sqrt(m2 + b2 * fraction);
}

BoundState bound_state(const ModelParams& params, const Channel& channel, int n_g, Branch branch) {
    const double e = energy(params, channel, n_g, branch);
    const double kb = channel.kappa_bar();
    BoundState s{
        .n_g = n_g,
        .n_f = kb < 0.0 ? n_g - 1 : n_g + 1,
        .channel = channel,
        .energy = e,
        .branch = branch,
        .gamma = 0.0,
        .effective_mass = params.effective_mass(),
    };
    s.gamma = std::abs(params.b() * kb) / s.n_bar();
    return s;
}

BoundState special_state(const ModelParams& params, const Channel& channel) {
    require_bound(params, channel);
    const double kb = channel.kappa_bar();
    BoundState s{
        .n_g = std::nullopt,
        .n_f = std::nullopt,
        .channel = channel,
        .energy = 0.0,
        .branch = Branch::particle,
        .gamma = std::abs(params.b()),
        .effective_mass = params.effective_mass(),
    };
    if (kb < 0.0) {
        s.n_g = 0;
        s.energy = params.mass();
    } else {
        s.n_f = 0;
        s.energy = -params.mass();
        s.branch = Branch::antiparticle;
    }
    return s;
}

double WavefunctionForm::value(double r) const {
    if (amplitude == 0.0) {
        return 0.0;
    }
    const double x = 2.0 * gamma * r;
    return amplitude * std::pow(x, prefactor_exponent) * std::exp(-gamma * r) * tcd::laguerre(laguerre, x);
}

double WavefunctionForm::derivative(double r) const {
    if (amplitude == 0.0) {
        return 0.0;
    }
    const double x = 2.0 * gamma * r;
    const double envelope = amplitude * std::pow(x, prefactor_exponent) * std::exp(-gamma * r);
    const double q = prefactor_exponent / r - gamma;
    return envelope * (q * tcd::laguerre(laguerre, x) + 2.0 * gamma * laguerre_derivative(laguerre, x));
}

double WavefunctionForm::second_derivative(double r) const {
    if (amplitude == 0.0) {
        return 0.0;
    }
    const double x = 2.0 * gamma * r;
    const double p = prefactor_exponent;
    const double envelope = amplitude * std::pow(x, p) * std::exp(-gamma * r);
    const double q = p / r - gamma;
    const double l0 = tcd::laguerre(laguerre, x);
    const double l1 = laguerre_derivative(laguerre, x);
    const double l2 = laguerre.degree >= 2 ? tcd::laguerre({laguerre.degree - 2, laguerre.alpha + 2.0}, x) : 0.0;
    return envelope * ((q * q - p / (r * r)) * l0 + 4.0 * gamma * q * l1 + 4.0 * gamma * gamma * l2);
}

double WavefunctionForm::norm_squared() const {
    if (amplitude == 0.0) {
        return 0.0;
    }
    // (2 gamma r)^(2p) e^(-2 gamma r) L^2 dr = x^(2p) e^(-x) L(x)^2 dx / (2 gamma)
    const auto& rule = cached_rule(2.0 * prefactor_exponent);
    const double integral = rule.integrate([this](double x) {
        const double l = tcd::laguerre(laguerre, x);
        return l * l;
    });
    return amplitude * amplitude * integral / (2.0 * gamma);
}

Wavefunctions wavefunctions(const ModelParams& params, const BoundState& state) {
    require_bound(params, state.channel);
    const double kb = state.channel.kappa_bar();
    const double m = params.mass();
    const double e = state.energy;
    const double gamma = state.gamma;

    WavefunctionForm g{};
    WavefunctionForm f{};
    g.gamma = gamma;
    f.gamma = gamma;
    double ratio = 0.0; // amplitude of f relative to g
    bool f_only = false;

    if (kb < 0.0) {
        const int n = state.n_g.value_or(0);
        g.prefactor_exponent = -kb;
        g.laguerre = {n, -1.0 - 2.0 * kb};
        f.prefactor_exponent = 1.0 - kb;
        f.laguerre = {n > 0 ? n - 1 : 0, 1.0 - 2.0 * kb};
        if (state.is_special()) {
            ratio = 0.0;
        } else {
            if (m + e == 0.0) {
                throw special_state_required("E = -M is excluded for kappa_bar < -1/2");
            }
            const double sgn = (m + e) > 0.0 ? 1.0 : -1.0;
            ratio = -sgn / std::sqrt(n * (n - 2.0 * kb)) * std::sqrt(std::abs((m - e) / (m + e)));
        }
    } else {
        const int n = state.n_g.value_or(0);
        g.prefactor_exponent = 1.0 + kb;
        g.laguerre = {n, 1.0 + 2.0 * kb};
        f.prefactor_exponent = kb;
        f.laguerre = {state.is_special() ? 0 : n + 1, -1.0 + 2.0 * kb};
        if (state.is_special()) {
            f_only = true;
        } else {
            const double sgn = (m - e) > 0.0 ? 1.0 : ((m - e) < 0.0 ? -1.0 : 0.0);
            ratio = -std::sqrt((n + 1.0) * (n + 1.0 + 2.0 * kb)) * sgn * std::sqrt(std::abs((m - e) / (m + e)));
        }
    }
    g.laguerre.validate();
    f.laguerre.validate();

    if (f_only) {
        g.amplitude = 0.0;
        f.amplitude = 1.0;
        f.amplitude = 1.0 / std::sqrt(f.norm_squared());
    } else {
        g.amplitude = 1.0;
        f.amplitude = ratio;
        const double total = g.norm_squared() + f.norm_squared();
        const double scale = 1.0 / std::sqrt(total);
        g.amplitude = scale;
        f.amplitude = ratio * scale;
    }
    return {state, g, f};
}

Wavefunctions wavefunctions(const ModelParams& params, const Channel& channel, int n_g, Branch branch) {
    require_bound(params, channel);
    if (n_g == 0 && channel.kappa_bar() < 0.0) {
        if (branch == Branch::antiparticle) {
            throw special_state_required("E = -M is excluded for kappa_bar < -1/2 (division by M + E)");
        }
        return wavefunctions(params, special_state(params, channel));
    }
    return wavefunctions(params, bound_state(params, channel, n_g, branch));
}

RadialSamples sample(const Wavefunctions& wf, std::span<const double> r) {
    if (r.size() < 2) {
        throw std::invalid_argument("sampling grid needs at least two points");
    }
    RadialSamples out;
    out.r.assign(r.begin(), r.end());
    out.g.reserve(r.size());
    out.f.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] > 0.0) || (i > 0 && !(r[i] > r[i - 1]))) {
            throw std::invalid_argument("sampling grid must be positive and strictly increasing");
        }
        out.g.push_back(wf.g.value(r[i]));
        out.f.push_back(wf.f.value(r[i]));
    }
    out.node_count_g = count_nodes(out, Component::upper).nodes;
    out.node_count_f = count_nodes(out, Component::lower).nodes;
    double acc = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double left = out.g[i - 1] * out.g[i - 1] + out.f[i - 1] * out.f[i - 1];
        const double right = out.g[i] * out.g[i] + out.f[i] * out.f[i];
        acc += 0.5 * (left + right) * (r[i] - r[i - 1]);
    }
    out.l2_norm = std::sqrt(acc);
    return out;
}

std::vector<double> linear_grid(double r_first, double r_last, int points) {
    if (points < 2 || !(r_first > 0.0) || !(r_last > r_first)) {
        throw std::invalid_argument("linear grid needs 0 < r_first < r_last and at least two points");
    }
    std::vector<double> r(points);
    const double h = (r_last - r_first) / (points - 1);
    for (int i = 0; i < points; ++i) {
        r[i] = r_first + i * h;
    }
    r.back() = r_last;
    return r;
}

std::vector<double> log_grid(double r_first, double r_last, int points) {
    if (points < 2 || !(r_first > 0.0) || !(r_last > r_first)) {
        throw std::invalid_argument("log grid needs 0 < r_first < r_last and at least two points");
    }
    std::vector<double> r(points);
    const double step = std::log(r_last / r_first) / (points - 1);
    for (int i = 0; i < points; ++i) {
        r[i] = r_first * std::exp(i * step);
    }
    r.front() = r_first;
    r.back() = r_last;
    return r;
}

double nonrelativistic_binding(const ModelParams& params, const Channel& channel, int n_g) {
    require_bound(params, channel);
    if (n_g < 0) {
        throw std::invalid_argument("n_g must be nonnegative");
    }
    const double kb = channel.kappa_bar();
    const double n_bar = level_of(channel, n_g) + std::abs(kb);
    const double ratio = kb / n_bar;
    return 0.5 * params.b() * params.b() / params.mass() * (1.0 - ratio * ratio);
}

ModelParams charge_conjugate(const ModelParams& params) { return {params.mass(), -params.a(), -params.b()}; }

} // namespace tcd
