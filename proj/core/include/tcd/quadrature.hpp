#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace tcd {

/// Generalized Gauss-Laguerre rule for int_0^inf x^alpha e^(-x) h(x) dx.
/// Exact when h is a polynomial of degree < 2 * size().
class GaussLaguerreRule {
public:
    /// Golub-Welsch on the Jacobi matrix of L^(alpha). Throws std::domain_error
    /// unless nodes >= 1 and alpha > -1.
    GaussLaguerreRule(int nodes, double alpha);

    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
    /// Weights scaled to sum to one; multiply by moment() for the true weights.
    [[nodiscard]] const std::vector<double>& unit_weights() const noexcept { return weights_; }
    /// Gamma(alpha + 1), the zeroth moment of the weight.
    [[nodiscard]] double moment() const noexcept { return moment_; }

    template <class F>
    [[nodiscard]] double integrate(F&& h) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            sum += weights_[i] * h(nodes_[i]);
        }
        return moment_ * sum;
    }

private:
    double alpha_;
    double moment_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

inline constexpr int default_gauss_laguerre_nodes = 128;

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson with Richardson correction on [a, b]. The interval is
/// pre-split into `panels` pieces so narrow features are not skipped.
template <class F>
[[nodiscard]] double integrate_adaptive(F&& f, double a, double b, double tol = 1e-12, int panels = 64,
                                        int max_depth = 40) {
    double total = 0.0;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double hi = (p + 1 == panels) ? b : lo + width;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fmid = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += detail::simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol / panels, max_depth);
    }
    return total;
}

} // namespace tcd
