#pragma once

// Closed-form bound states of the Dirac equation with the radial tensor
// potential U(r) = a/r + b.
//
// With kappa_bar = kappa + a both second-order radial equations take the form
// of a Schroedinger equation in a singular Coulomb potential. Binding requires
// b * kappa_bar < 0 and |kappa_bar| > 1/2, and the energies depend only on the
// ratio |kappa_bar| / n_bar with n_bar = n_g + 1/2 + |1/2 + kappa_bar|:
//
//   E = +-sqrt(M^2 + b^2 [1 - (kappa_bar / n_bar)^2]),   M <= |E| < M*.
//
// States are indexed by n_g (degree of the Laguerre polynomial in g). For
// kappa_bar < -1/2, n_g = 0 is the special E = +M state with f == 0; for
// kappa_bar > 1/2, the special E = -M state has g == 0 and is indexed by
// n_f = 0 alone.

#include <span>
#include <vector>

#include "tcd/special_functions.hpp"
#include "tcd/types.hpp"

namespace tcd {

/// Identification of one second-order radial equation with
///   u'' - [(beta + l(l+1))/r^2 + 2 m Z / r - 2 m epsilon] u = 0.
/// l is fixed to 0, so beta carries the full modified barrier.
struct SingularCoulombMap {
    double Z;
    double beta;
    int l;
    double S;       // sqrt(beta + (l + 1/2)^2)
    double epsilon; // -m Z^2 / (2 (n + 1/2 + S)^2)
    int n;
    double m_map;
    Component component;

    /// Z < 0 and beta > -1/4.
    [[nodiscard]] bool binds() const noexcept { return Z < 0.0 && beta > -0.25; }
    /// E^2 recovered from epsilon = (E^2 - M^2 - b^2) / (2 m).
    [[nodiscard]] double energy_squared(const ModelParams& params) const noexcept;
};

/// Throws unbound_channel when |kappa_bar| <= 1/2, std::invalid_argument for
/// n < 0 or m_map <= 0.
[[nodiscard]] SingularCoulombMap map_to_singular_coulomb(const ModelParams& params, const Channel& channel,
                                                         Component component, int n, double m_map = 1.0);

/// Energy of the regular state n_g on the given branch.
///
/// Throws zero_kappa_bar for kappa_bar == 0, unbound_channel when the channel
/// does not bind, special_state_required for n_g == 0 with kappa_bar < -1/2.
[[nodiscard]] double energy(const ModelParams& params, const Channel& channel, int n_g, Branch branch);

/// Same energy via the factored forms
///   E^2 = M^2 + b^2 n_g (n_g - 2 kb) / (n_g - kb)^2                 (kb < -1/2)
///   E^2 = M^2 + b^2 (n_g+1)(n_g+1+2 kb) / (n_g+1+kb)^2             (kb > +1/2)
[[nodiscard]] double energy_factored(const ModelParams& params, const Channel& channel, int n_g, Branch branch);

/// Regular bound state (n_g >= 1 for kappa_bar < -1/2, n_g >= 0 for kappa_bar > 1/2).
[[nodiscard]] BoundState bound_state(const ModelParams& params, const Channel& channel, int n_g, Branch branch);

/// E = +M (kappa_bar < -1/2, b > 0) or E = -M (kappa_bar > 1/2, b < 0).
/// Throws unbound_channel for other sign combinations.
[[nodiscard]] BoundState special_state(const ModelParams& params, const Channel& channel);

/// One radial component A (2 gamma r)^p e^(-gamma r) L_n^(alpha)(2 gamma r).
struct WavefunctionForm {
    double prefactor_exponent;
    LaguerreSpec laguerre;
    double gamma;
    double amplitude;

    [[nodiscard]] double value(double r) const;
    [[nodiscard]] double derivative(double r) const;
    [[nodiscard]] double second_derivative(double r) const;
    /// int_0^inf component^2 dr by generalized Gauss-Laguerre quadrature.
    [[nodiscard]] double norm_squared() const;
};

struct Wavefunctions {
    BoundState state;
    WavefunctionForm g;
    WavefunctionForm f;
};

/// Both components with int (g^2 + f^2) dr = 1 and the leading amplitude of
/// the nonvanishing component positive.
[[nodiscard]] Wavefunctions wavefunctions(const ModelParams& params, const BoundState& state);

/// Convenience: n_g == 0 with kappa_bar < -1/2 on the particle branch yields
/// the special state; the antiparticle branch there (E = -M) is rejected.
[[nodiscard]] Wavefunctions wavefunctions(const ModelParams& params, const Channel& channel, int n_g, Branch branch);

[[nodiscard]] RadialSamples sample(const Wavefunctions& wf, std::span<const double> r);

[[nodiscard]] std::vector<double> linear_grid(double r_first, double r_last, int points);
[[nodiscard]] std::vector<double> log_grid(double r_first, double r_last, int points);

/// Binding energy E - M to leading order in b/M:
///   (b^2 / 2M) [1 - kappa_bar^2 / (n_g + 1/2 + |kappa_bar + 1/2|)^2].
/// n_g == 0 with kappa_bar < -1/2 (the special state) gives 0.
[[nodiscard]] double nonrelativistic_binding(const ModelParams& params, const Channel& channel, int n_g);

/// Charge conjugation flips the sign of the tensor potential: (a, b) -> (-a, -b).
[[nodiscard]] ModelParams charge_conjugate(const ModelParams& params);

} // namespace tcd
