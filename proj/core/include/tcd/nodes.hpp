#pragma once

#include <span>

#include "tcd/types.hpp"

namespace tcd {

struct NodeReport {
    int nodes = 0;
    /// Some sign change sits between samples that are both large compared to
    /// their neighbours, i.e. the zero is probably not resolved.
    bool suspect_undersampling = false;
};

/// Counts strict sign changes of `values` in the open sampling interval.
/// Samples with |v| <= noise_floor * max|v| carry no sign and are skipped, so
/// boundary zeros and decayed tails do not register as nodes.
[[nodiscard]] NodeReport count_nodes(std::span<const double> values, double noise_floor = 1e-10);

[[nodiscard]] NodeReport count_nodes(const RadialSamples& samples, Component component, double noise_floor = 1e-10);

} // namespace tcd
