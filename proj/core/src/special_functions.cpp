#include "tcd/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace tcd {

void LaguerreSpec::validate() const {
    if (degree < 0) {
        throw std::domain_error("Laguerre degree must be nonnegative, got " + std::to_string(degree));
    }
    if (!(alpha > -1.0)) {
        throw std::domain_error("Laguerre order alpha must exceed -1, got " + std::to_string(alpha));
    }
}

double laguerre(const LaguerreSpec& spec, double x) {
    spec.validate();
    if (x < 0.0) {
        throw std::domain_error("Laguerre argument must be nonnegative");
    }
    const double alpha = spec.alpha;
    double prev = 1.0;
    if (spec.degree == 0) {
        return prev;
    }
    double curr = 1.0 + alpha - x;
    for (int k = 1; k < spec.degree; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

double laguerre_derivative(const LaguerreSpec& spec, double x) {
    spec.validate();
    if (spec.degree == 0) {
        if (x < 0.0) {
            throw std::domain_error("Laguerre argument must be nonnegative");
        }
        return 0.0;
    }
    return -laguerre({spec.degree - 1, spec.alpha + 1.0}, x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma requires x > 0");
    }
    return boost::math::lgamma(x);
}

double laguerre_weighted_norm(int n, double alpha) {
    LaguerreSpec{n, alpha}.validate();
    return (2.0 * n + alpha + 1.0) * std::exp(log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0));
}

} // namespace tcd
