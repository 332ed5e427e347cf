#include "tcd/nodes.hpp"

#include <algorithm>
#include <cmath>

namespace tcd {

NodeReport count_nodes(std::span<const double> values, double noise_floor) {
    NodeReport report;
    double peak = 0.0;
    for (double v : values) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) {
        return report;
    }
    const double floor = noise_floor * peak;
    const auto n = static_cast<std::ptrdiff_t>(values.size());

    std::ptrdiff_t last = -1; // index of the last sample carrying a sign
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double v = values[i];
        if (std::abs(v) <= floor) {
            continue;
        }
        if (last >= 0 && (v > 0.0) != (values[last] > 0.0)) {
            ++report.nodes;
            // A resolved simple zero has small samples on both sides relative
            // to the samples one step further out.
            const double inner = std::min(std::abs(values[last]), std::abs(v));
            const double outer = std::max(last > 0 ? std::abs(values[last - 1]) : 0.0,
                                          i + 1 < n ? std::abs(values[i + 1]) : 0.0);
            if (inner > 0.5 * outer) {
                report.suspect_undersampling = true;
            }
        }
        last = i;
    }
    return report;
}

NodeReport count_nodes(const RadialSamples& samples, Component component, double noise_floor) {
    return count_nodes(component == Component::upper ? std::span<const double>(samples.g)
                                                     : std::span<const double>(samples.f),
                       noise_floor);
}

} // namespace tcd
