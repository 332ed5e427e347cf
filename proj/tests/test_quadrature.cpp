#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "tcd/quadrature.hpp"
#include "tcd/special_functions.hpp"

using namespace tcd;

TEST_CASE("Gauss-Laguerre rule is exact on polynomials") {
    for (double alpha : {0.0, 0.5, 2.0, 7.5}) {
        const GaussLaguerreRule rule(24, alpha);
        CHECK(rule.size() == 24);
        double sum = 0.0;
        for (double w : rule.unit_weights()) {
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        for (int k = 0; k <= 20; ++k) {
            const double exact = std::exp(std::lgamma(alpha + k + 1.0));
            CHECK(rule.integrate([&](double x) { return std::pow(x, k); }) == doctest::Approx(exact).epsilon(1e-11));
        }
    }
    CHECK_THROWS_AS(GaussLaguerreRule(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(GaussLaguerreRule(4, -1.0), std::domain_error);
}

TEST_CASE("Laguerre orthogonality by quadrature") {
    for (double alpha : {0.0, 1.5, 4.0}) {
        const GaussLaguerreRule rule(default_gauss_laguerre_nodes, alpha);
        for (int m = 0; m <= 6; ++m) {
            for (int n = 0; n <= 6; ++n) {
                const double v = rule.integrate([&](double x) { return laguerre({m, alpha}, x) * laguerre({n, alpha}, x); });
                if (m != n) {
                    CHECK(std::abs(v) < 1e-9);
                } else {
                    const double exact = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0));
                    CHECK(v == doctest::Approx(exact).epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("adaptive Simpson") {
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_adaptive([](double x) { return x * x * x * std::exp(-x); }, 0.0, 200.0) ==
          doctest::Approx(6.0).epsilon(1e-11));
    const auto peaked = [](double x) { return std::exp(-1e4 * (x - 0.3) * (x - 0.3)); };
    CHECK(integrate_adaptive(peaked, 0.0, 1.0) == doctest::Approx(std::sqrt(M_PI) / 100.0).epsilon(1e-10));
    CHECK(integrate_adaptive(peaked, 0.0, 1.0) == doctest::Approx(oracle::simpson(peaked, 0.0, 1.0, 200000)).epsilon(1e-9));
}
