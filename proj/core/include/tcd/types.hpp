#pragma once

// Quantum numbers, model parameters and validity predicates shared by the
// analytic solver, the numerical oracle and the CLI.
//
// Units are natural (hbar = c = 1). The tensor potential is U(r) = a/r + b.

#include <optional>
#include <vector>

namespace tcd {

enum class Branch { particle, antiparticle };

/// +1 for the particle (+) root, -1 for the antiparticle (-) root.
[[nodiscard]] constexpr double sign_of(Branch b) noexcept { return b == Branch::particle ? 1.0 : -1.0; }
[[nodiscard]] constexpr Branch opposite(Branch b) noexcept {
    return b == Branch::particle ? Branch::antiparticle : Branch::particle;
}

/// Radial component of the Dirac spinor: g (upper) or f (lower).
enum class Component { upper, lower };

class ModelParams {
public:
    /// Throws std::invalid_argument unless mass > 0 and a, b are finite.
    ModelParams(double mass, double a, double b);

    [[nodiscard]] double mass() const noexcept { return mass_; }
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    /// M* = sqrt(M^2 + b^2), strict upper bound on |E| of bound states.
    [[nodiscard]] double effective_mass() const noexcept;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double mass_;
    double a_;
    double b_;
};

/// A spin-orbit channel. kappa = -(l+1), j = l+1/2 for aligned spin;
/// kappa = l, j = l-1/2 otherwise. kappa_bar = kappa + a absorbs the Coulomb
/// tensor strength and is the only combination entering energies.
class Channel {
public:
    /// Throws std::invalid_argument for kappa == 0 or non-finite a.
    static Channel from_kappa(int kappa, double a);
    /// two_j = 2j (odd, positive). Throws std::invalid_argument otherwise.
    static Channel from_j(int two_j, bool spin_aligned, double a);

    [[nodiscard]] int kappa() const noexcept { return kappa_; }
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double kappa_bar() const noexcept { return kappa_bar_; }
    [[nodiscard]] int two_j() const noexcept { return kappa_ < 0 ? -2 * kappa_ - 1 : 2 * kappa_ - 1; }
    [[nodiscard]] double j() const noexcept { return 0.5 * two_j(); }
    [[nodiscard]] int ell_upper() const noexcept { return kappa_ < 0 ? -kappa_ - 1 : kappa_; }
    [[nodiscard]] bool spin_aligned() const noexcept { return kappa_ < 0; }

    friend bool operator==(const Channel&, const Channel&) = default;

private:
    Channel(int kappa, double a);

    int kappa_;
    double a_;
    double kappa_bar_;
};

/// Channel for kappa under the Coulomb strength of `params`.
[[nodiscard]] Channel make_channel(const ModelParams& params, int kappa);

/// True iff b * kappa_bar < 0 and |kappa_bar| > 1/2.
/// Throws std::invalid_argument when the channel was built for another a.
[[nodiscard]] bool bound_states_exist(const ModelParams& params, const Channel& channel);

/// Admissible kappa as a half-line: kappa < -a - 1/2 for b > 0, kappa > -a + 1/2
/// for b < 0, always excluding kappa = 0.
struct KappaRange {
    enum class Side { below, above };

    Side side;
    double bound;

    [[nodiscard]] bool contains(int kappa) const noexcept;
    /// All admissible kappa in [lo, hi].
    [[nodiscard]] std::vector<int> enumerate(int lo, int hi) const;
};

/// Throws unbound_channel when b == 0 (no channel binds).
[[nodiscard]] KappaRange kappa_range(const ModelParams& params);

/// A bound state. Exactly one of n_g / n_f is absent for the two special
/// states (E = +M with f == 0; E = -M with g == 0); both are set otherwise.
struct BoundState {
    std::optional<int> n_g;
    std::optional<int> n_f;
    Channel channel;
    double energy;
    Branch branch;
    double gamma;
    double effective_mass;

    [[nodiscard]] bool is_special() const noexcept { return !n_g.has_value() || !n_f.has_value(); }
    /// Level index n with n_bar = n + |kappa_bar|: n_g for kappa_bar < 0, n_f otherwise.
    [[nodiscard]] int level() const noexcept;
    /// Degeneracy key n_bar = n_g + 1/2 + |1/2 + kappa_bar| (equivalently n_f + 1/2 + |1/2 - kappa_bar|).
    [[nodiscard]] double n_bar() const noexcept;
};

/// Radial functions g(r), f(r) on a grid plus node counts and L2 norm.
struct RadialSamples {
    std::vector<double> r;
    std::vector<double> g;
    std::vector<double> f;
    int node_count_g = 0;
    int node_count_f = 0;
    double l2_norm = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return r.size(); }
};

} // namespace tcd
