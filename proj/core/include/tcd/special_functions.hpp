#pragma once

namespace tcd {

/// Generalized Laguerre polynomial L_n^(alpha), alpha > -1.
struct LaguerreSpec {
    int degree = 0;
    double alpha = 0.0;

    /// Throws std::domain_error unless degree >= 0 and alpha > -1.
    void validate() const;
};

/// L_n^(alpha)(x) via the three-term recurrence in n:
///   (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}.
[[nodiscard]] double laguerre(const LaguerreSpec& spec, double x);

/// d/dx L_n^(alpha)(x) = -L_{n-1}^(alpha+1)(x); zero for n = 0.
[[nodiscard]] double laguerre_derivative(const LaguerreSpec& spec, double x);

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
[[nodiscard]] double log_gamma(double x);

/// Closed form of the integral
///   int_0^inf x^(alpha+1) e^(-x) [L_n^(alpha)(x)]^2 dx = (2n+alpha+1) Gamma(n+alpha+1) / n!
/// which is the norm integral of one radial component.
[[nodiscard]] double laguerre_weighted_norm(int n, double alpha);

} // namespace tcd
