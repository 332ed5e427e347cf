#include "tcd/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tcd/errors.hpp"

namespace tcd {

ModelParams::ModelParams(double mass, double a, double b) : mass_(mass), a_(a), b_(b) {
    if (!(std::isfinite(mass) && mass > 0.0)) {
        throw std::invalid_argument("mass must be positive and finite, got " + std::to_string(mass));
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("tensor strengths a and b must be finite");
    }
}

double ModelParams::effective_mass() const noexcept { return std::hypot(mass_, b_); }

Channel::Channel(int kappa, double a) : kappa_(kappa), a_(a), kappa_bar_(kappa + a) {
    if (kappa == 0) {
        throw std::invalid_argument("kappa must be a nonzero integer");
    }
    if (!std::isfinite(a)) {
        throw std::invalid_argument("a must be finite");
    }
}

Channel Channel::from_kappa(int kappa, double a) { return Channel(kappa, a); }

Channel Channel::from_j(int two_j, bool spin_aligned, double a) {
    if (two_j <= 0 || two_j % 2 == 0) {
        throw std::invalid_argument("2j must be a positive odd integer, got " + std::to_string(two_j));
    }
    // j + 1/2 = (two_j + 1) / 2
    const int j_plus_half = (two_j + 1) / 2;
    return Channel(spin_aligned ? -j_plus_half : j_plus_half, a);
}

Channel make_channel(const ModelParams& params, int kappa) { return Channel::from_kappa(kappa, params.a()); }

bool bound_states_exist(const ModelParams& params, const Channel& channel) {
    if (channel.a() != params.a()) {
        throw std::invalid_argument("channel was built for a different Coulomb tensor strength a");
    }
    const double kb = channel.kappa_bar();
    return params.b() * kb < 0.0 && std::abs(kb) > 0.5;
}

bool KappaRange::contains(int kappa) const noexcept {
    if (kappa == 0) {
        return false;
    }
    return side == Side::below ? kappa < bound : kappa > bound;
}

std::vector<int> KappaRange::enumerate(int lo, int hi) const {
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k) {
        if (contains(k)) {
            out.push_back(k);
        }
    }
    return out;
}

KappaRange kappa_range(const ModelParams& params) {
    if (params.b() > 0.0) {
        return {KappaRange::Side::below, -params.a() - 0.5};
    }
    if (params.b() < 0.0) {
        return {KappaRange::Side::above, -params.a() + 0.5};
    }
    throw unbound_channel("b = 0: the tensor potential binds no channel");
}

int BoundState::level() const noexcept {
    if (channel.kappa_bar() < 0.0) {
        return n_g.value_or(0);
    }
    return n_f.value_or(0);
}

double BoundState::n_bar() const noexcept { return level() + std::abs(channel.kappa_bar()); }

} // namespace tcd
