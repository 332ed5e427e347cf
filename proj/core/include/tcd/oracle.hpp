#pragma once

// Numerical cross-check of the analytic spectrum: a shooting eigensolver for
// the second-order radial equations
//
//   u'' = [V(r) - lambda] u,  lambda = E^2 - M^2 - b^2,
//   V_upper = kb(kb+1)/r^2 + 2 b kb / r,   V_lower = kb(kb-1)/r^2 + 2 b kb / r,
//
// and an adaptive integrator for the coupled first-order system
//
//   g' = -(kb/r + b) g + (M+E) f,   f' = (kb/r + b) f + (M-E) g.
//
// Nothing here uses the closed-form energies.

#include <functional>
#include <optional>
#include <utility>

#include "tcd/types.hpp"

namespace tcd {

/// V(r) of the specialized second-order equation (the constant b^2 is folded
/// into lambda).
class EffectivePotential {
public:
    EffectivePotential(const ModelParams& params, const Channel& channel, Component component);

    /// Throws std::domain_error for r <= 0.
    [[nodiscard]] double operator()(double r) const;

    /// Coefficient of 1/r^2: kb(kb+1) (upper) or kb(kb-1) (lower).
    [[nodiscard]] double centrifugal() const noexcept { return centrifugal_; }
    /// Coefficient of 1/r: 2 b kb.
    [[nodiscard]] double coulomb() const noexcept { return coulomb_; }

private:
    double centrifugal_;
    double coulomb_;
};

/// Throws unbound_channel for |kappa_bar| <= 1/2.
[[nodiscard]] EffectivePotential effective_potential(const ModelParams& params, const Channel& channel,
                                                     Component component);

/// Effective potential for an arbitrary radial tensor field U:
///   kappa(kappa+1)/r^2 + 2 kappa U/r - U' + U^2   (upper)
///   kappa(kappa-1)/r^2 + 2 kappa U/r + U' + U^2   (lower)
/// so that u'' = [W(r) + M^2 - E^2] u. For U = a/r + b this equals
/// EffectivePotential + b^2.
[[nodiscard]] double general_effective_potential(int kappa, const std::function<double(double)>& U,
                                                 const std::function<double(double)>& dU, Component component,
                                                 double r);

struct ShootingConfig {
    /// Inner cutoff; default 1e-6 / sqrt(|lambda_lo|).
    std::optional<double> r_min;
    /// Outer cutoff; default (30 + 2 nu) / k with k = sqrt(-lambda) and
    /// nu = -b kb / k the power of the Coulomb tail r^nu e^(-k r). When
    /// adapt_r_max is set the box follows the bracketed eigenvalue.
    std::optional<double> r_max;
    bool adapt_r_max = true;
    /// RK4 steps over [r_min, r_max] on the first pass; doubled until the
    /// Richardson error estimate meets `tolerance`.
    int step_count = 3000;
    int max_doublings = 4;
    /// Default: outer classical turning point at the bracketed lambda,
    /// clamped to (2 r_min, r_max / 2).
    std::optional<double> match_point;
    std::pair<double, double> lambda_bracket{-1.0, -1e-6};
    /// Absolute tolerance on lambda.
    double tolerance = 1e-11;

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

/// Bracket (-4 b^2 kb^2 (1 + 1e-3), -1e-6 * scale) for b != 0, and
/// (-M^2, -1e-6 M^2) for b == 0 (the |E| < M window).
[[nodiscard]] ShootingConfig default_shooting_config(const ModelParams& params, const Channel& channel,
                                                     Component component);

struct EigenResult {
    double lambda = 0.0;
    /// (+E, -E) with E = sqrt(lambda + M^2 + b^2).
    std::pair<double, double> energy_pair{0.0, 0.0};
    int node_count = 0;
    bool converged = false;
    /// |normalized Wronskian| of the matched solutions at the match point.
    double residual = 0.0;
    double error_estimate = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    double match_point = 0.0;
    int step_count = 0;
};

/// Eigenvalue with `node_target` interior nodes. Node-count bisection
/// (Sturm) brackets it, an Illinois secant on the log-derivative mismatch
/// refines it, and RK4 results at N and 2N steps are Richardson-extrapolated.
///
/// Throws shooting_error: no_bracket when lambda_bracket holds no eigenvalue
/// with that node count, not_converged on the iteration cap, node_mismatch
/// when the matched solution violates Sturm ordering.
[[nodiscard]] EigenResult shoot_eigenvalue(const ModelParams& params, const Channel& channel, Component component,
                                           int node_target, const ShootingConfig& config);

[[nodiscard]] EigenResult shoot_eigenvalue(const ModelParams& params, const Channel& channel, Component component,
                                           int node_target);

struct FirstOrderConfig {
    double r_min = 1e-6;
    double r_max = 30.0;
    /// Local error tolerance of the step-doubling RK4 (relative to the running peak).
    double tolerance = 1e-13;
    int max_steps = 200000;
};

struct FirstOrderResult {
    RadialSamples samples;
    double peak = 0.0;
    /// sqrt(g^2 + f^2) at the last point over the peak.
    double tail_ratio = 0.0;
    /// Smallest sqrt(g^2 + f^2) beyond the peak over the peak. An eigenvalue
    /// drives this down to the round-off floor before the growing solution
    /// takes over; a wrong energy turns around early.
    double decay_depth = 0.0;
    double peak_g = 0.0;
    double peak_f = 0.0;
    bool overflow = false;
    bool bound = false;
    int steps = 0;
};

/// Integrates the first-order system outward from the regular power-law start
/// (g ~ r^-kb for kb < 0, f ~ r^kb for kb > 0) with step-doubling RK4.
/// `bound` is set when decay_depth < decay_threshold and no overflow occurred;
/// node counts in the samples stop where the envelope has fallen to
/// sqrt(decay_depth) of its peak, the norm at the decay minimum.
[[nodiscard]] FirstOrderResult integrate_first_order(const ModelParams& params, const Channel& channel, double energy,
                                                     const FirstOrderConfig& config, double decay_threshold = 1e-6);

} // namespace tcd
