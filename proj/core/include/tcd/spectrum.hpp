#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tcd/types.hpp"

namespace tcd {

enum class BranchSelection { plus, minus, both };

/// One (kappa, level, E) record. Channels without bound states appear once
/// with bound == false and NaN numeric fields.
struct SpectrumRow {
    int kappa = 0;
    double kappa_bar = 0.0;
    std::optional<int> n_g;
    std::optional<int> n_f;
    double n_bar = 0.0;
    double energy = 0.0;
    double e_over_m = 0.0;
    bool is_special = false;
    bool bound = false;
    Branch branch = Branch::particle;
};

/// All states with level n = 0..n_max (n_g for kappa_bar < -1/2, n_f for
/// kappa_bar > 1/2), so n_bar = n + |kappa_bar| runs over the same values on
/// both sides. Rows are ordered by (|kappa_bar|, kappa_bar, n_bar, branch).
[[nodiscard]] std::vector<SpectrumRow> spectrum(const ModelParams& params, std::span<const int> kappas, int n_max,
                                                BranchSelection branches);

/// Antiparticle spectrum E^c for (a, b): the negated energies of the
/// charge-conjugate problem (-a, -b) evaluated at -kappa on the opposite
/// branch. With the Fig. 1 style inputs (plus branch) this yields the
/// positive E^c levels.
[[nodiscard]] std::vector<SpectrumRow> conjugate_spectrum(const ModelParams& params, std::span<const int> kappas,
                                                          int n_max, BranchSelection branches);

struct ConjugationReport {
    ModelParams conjugate;
    std::size_t states_checked = 0;
    std::size_t unmatched = 0;
    double max_relative_deviation = 0.0;

    [[nodiscard]] bool consistent(double tolerance = 1e-13) const noexcept {
        return unmatched == 0 && max_relative_deviation <= tolerance;
    }
};

/// Checks E_{n,kb}(a, b) = -E_{n',-kb}(-a, -b) on the opposite branch with
/// n_bar' = n_bar for every bound state of spectrum(params, kappas, n_max, both).
[[nodiscard]] ConjugationReport conjugation_report(const ModelParams& params, std::span<const int> kappas, int n_max);

/// Integers in [lo, hi] without 0.
[[nodiscard]] std::vector<int> kappa_span(int lo, int hi);

} // namespace tcd
