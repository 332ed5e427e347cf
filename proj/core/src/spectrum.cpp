#include "tcd/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "tcd/analytic.hpp"

namespace tcd {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

bool wants(BranchSelection sel, Branch b) {
    switch (sel) {
    case BranchSelection::plus:
        return b == Branch::particle;
    case BranchSelection::minus:
        return b == Branch::antiparticle;
    case BranchSelection::both:
        return true;
    }
    return false;
}

SpectrumRow row_from(const BoundState& s, const ModelParams& params) {
    SpectrumRow row;
    row.kappa = s.channel.kappa();
    row.kappa_bar = s.channel.kappa_bar();
    row.n_g = s.n_g;
    row.n_f = s.n_f;
    row.n_bar = s.n_bar();
    row.energy = s.energy;
    row.e_over_m = s.energy / params.mass();
    row.is_special = s.is_special();
    row.bound = true;
    row.branch = s.branch;
    return row;
}

BranchSelection flipped(BranchSelection sel) {
    switch (sel) {
    case BranchSelection::plus:
        return BranchSelection::minus;
    case BranchSelection::minus:
        return BranchSelection::plus;
    case BranchSelection::both:
        return BranchSelection::both;
    }
    return sel;
}

} // namespace

std::vector<int> kappa_span(int lo, int hi) {
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k) {
        if (k != 0) {
            out.push_back(k);
        }
    }
    return out;
}

std::vector<SpectrumRow> spectrum(const ModelParams& params, std::span<const int> kappas, int n_max,
                                  BranchSelection branches) {
    if (n_max < 0) {
        throw std::invalid_argument("n_max must be nonnegative");
    }
    std::vector<SpectrumRow> rows;
    for (int kappa : kappas) {
        if (kappa == 0) {
            continue;
        }
        const Channel channel = make_channel(params, kappa);
        if (!bound_states_exist(params, channel)) {
            SpectrumRow row;
            row.kappa = kappa;
            row.kappa_bar = channel.kappa_bar();
            row.n_bar = nan;
            row.energy = nan;
            row.e_over_m = nan;
            rows.push_back(row);
            continue;
        }
        const double kb = channel.kappa_bar();
        const BoundState special = special_state(params, channel);
        if (wants(branches, special.branch)) {
            rows.push_back(row_from(special, params));
        }
        for (int level = 1; level <= n_max; ++level) {
            const int n_g = kb < 0.0 ? level : level - 1;
            for (Branch b : {Branch::particle, Branch::antiparticle}) {
                if (wants(branches, b)) {
                    rows.push_back(row_from(bound_state(params, channel, n_g, b), params));
                }
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SpectrumRow& l, const SpectrumRow& r) {
        const double nl = l.bound ? l.n_bar : -1.0;
        const double nr = r.bound ? r.n_bar : -1.0;
        return std::tuple(std::abs(l.kappa_bar), l.kappa_bar, nl, l.branch == Branch::antiparticle) <
               std::tuple(std::abs(r.kappa_bar), r.kappa_bar, nr, r.branch == Branch::antiparticle);
    });
    return rows;
}

std::vector<SpectrumRow> conjugate_spectrum(const ModelParams& params, std::span<const int> kappas, int n_max,
                                            BranchSelection branches) {
    const ModelParams conj = charge_conjugate(params);
    std::vector<int> flipped_kappas;
    flipped_kappas.reserve(kappas.size());
    for (int k : kappas) {
        flipped_kappas.push_back(-k);
    }
    auto rows = spectrum(conj, flipped_kappas, n_max, flipped(branches));
    for (auto& row : rows) {
        if (row.bound) {
            row.energy = -row.energy;
            row.e_over_m = -row.e_over_m;
            row.branch = opposite(row.branch);
        }
    }
    return rows;
}

ConjugationReport conjugation_report(const ModelParams& params, std::span<const int> kappas, int n_max) {
    ConjugationReport report{charge_conjugate(params)};
    const auto original = spectrum(params, kappas, n_max, BranchSelection::both);
    std::vector<int> flipped_kappas;
    for (int k : kappas) {
        flipped_kappas.push_back(-k);
    }
    const auto partner = spectrum(report.conjugate, flipped_kappas, n_max, BranchSelection::both);

    for (const auto& row : original) {
        if (!row.bound) {
            continue;
        }
        ++report.states_checked;
        const auto it = std::find_if(partner.begin(), partner.end(), [&](const SpectrumRow& p) {
            return p.bound && p.kappa == -row.kappa && p.branch == opposite(row.branch) && p.n_bar == row.n_bar;
        });
        if (it == partner.end()) {
            ++report.unmatched;
            continue;
        }
        const double dev = std::abs(row.energy + it->energy) / std::abs(row.energy);
        report.max_relative_deviation = std::max(report.max_relative_deviation, dev);
    }
    // Partners without a preimage also break the bijection.
    std::size_t partner_bound = 0;
    for (const auto& p : partner) {
        partner_bound += p.bound ? 1 : 0;
    }
    if (partner_bound != report.states_checked) {
        report.unmatched += partner_bound > report.states_checked ? partner_bound - report.states_checked
                                                                   : report.states_checked - partner_bound;
    }
    return report;
}

} // namespace tcd
