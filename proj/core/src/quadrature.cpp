#include "tcd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "tcd/special_functions.hpp"

namespace tcd {

GaussLaguerreRule::GaussLaguerreRule(int nodes, double alpha) : alpha_(alpha) {
    if (nodes < 1) {
        throw std::domain_error("Gauss-Laguerre rule needs at least one node");
    }
    if (!(alpha > -1.0)) {
        throw std::domain_error("Gauss-Laguerre weight exponent must exceed -1");
    }
    moment_ = std::exp(log_gamma(alpha + 1.0));

    // Jacobi matrix of the monic recurrence: diagonal 2i+alpha+1, off-diagonal sqrt(i (i+alpha)).
    Eigen::VectorXd diag(nodes);
    Eigen::VectorXd sub(std::max(nodes - 1, 0));
    for (int i = 0; i < nodes; ++i) {
        diag(i) = 2.0 * i + alpha + 1.0;
    }
    for (int i = 1; i < nodes; ++i) {
        sub(i - 1) = std::sqrt(i * (i + alpha));
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("Gauss-Laguerre eigenproblem did not converge");
    }

    // Eigenvector components carry an absolute round-off floor that swamps the
    // e^(-x) decay of the outer weights. Below 1e-8 the weights come from
    //   w_i = Gamma(n+alpha+1) x_i / (n! (n+1)^2 L_{n+1}(x_i)^2)
    // at Newton-polished nodes instead.
    nodes_.resize(nodes);
    weights_.resize(nodes);
    const double log_scale = log_gamma(nodes + alpha + 1.0) - log_gamma(nodes + 1.0) - log_gamma(alpha + 1.0);
    for (int i = 0; i < nodes; ++i) {
        double x = solver.eigenvalues()(i);
        for (int it = 0; it < 2; ++it) {
            const double d = laguerre_derivative({nodes, alpha}, x);
            if (d != 0.0) {
                x -= laguerre({nodes, alpha}, x) / d;
            }
        }
        nodes_[i] = x;
        const double v0 = solver.eigenvectors()(0, i);
        if (v0 * v0 > 1e-8) {
            weights_[i] = v0 * v0;
            continue;
        }
        const double next = std::abs(laguerre({nodes + 1, alpha}, x));
        weights_[i] = std::exp(log_scale + std::log(x) - 2.0 * (std::log(nodes + 1.0) + std::log(next)));
    }
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    for (auto& w : weights_) {
        w /= total;
    }
}

} // namespace tcd
