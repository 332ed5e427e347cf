#include <cmath>
#include <stdexcept>

#include "tcd/errors.hpp"
#include "tcd/oracle.hpp"

namespace tcd {

EffectivePotential::EffectivePotential(const ModelParams& params, const Channel& channel, Component component) {
    const double kb = channel.kappa_bar();
    centrifugal_ = component == Component::upper ? kb * (kb + 1.0) : kb * (kb - 1.0);
    coulomb_ = 2.0 * params.b() * kb;
}

double EffectivePotential::operator()(double r) const {
    if (!(r > 0.0)) {
        throw std::domain_error("effective potential is defined for r > 0 only");
    }
    return centrifugal_ / (r * r) + coulomb_ / r;
}

EffectivePotential effective_potential(const ModelParams& params, const Channel& channel, Component component) {
    if (!(std::abs(channel.kappa_bar()) > 0.5)) {
        throw unbound_channel("effective potential requested for |kappa_bar| <= 1/2");
    }
    return {params, channel, component};
}

double general_effective_potential(int kappa, const std::function<double(double)>& U,
                                   const std::function<double(double)>& dU, Component component, double r) {
    if (!(r > 0.0)) {
        throw std::domain_error("effective potential is defined for r > 0 only");
    }
    const double k = kappa;
    const double u = U(r);
    if (component == Component::upper) {
        return k * (k + 1.0) / (r * r) + 2.0 * k * u / r - dU(r) + u * u;
    }
    return k * (k - 1.0) / (r * r) + 2.0 * k * u / r + dU(r) + u * u;
}

} // namespace tcd
