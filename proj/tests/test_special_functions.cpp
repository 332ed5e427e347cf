#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "tcd/quadrature.hpp"
#include "tcd/special_functions.hpp"

using namespace tcd;

TEST_CASE("laguerre small cases") {
    CHECK(laguerre({0, 0.3}, 3.7) == 1.0);
    CHECK(laguerre({1, 2.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(laguerre({3, 0.5}, 2.0) == doctest::Approx(oracle::series_laguerre(3, 0.5, 2.0)).epsilon(1e-13));
    CHECK_THROWS_AS((void)laguerre({2, 1.0}, -0.5), std::domain_error);
    CHECK_THROWS_AS((void)laguerre({-1, 1.0}, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)laguerre({2, -1.0}, 0.5), std::domain_error);
}

TEST_CASE("laguerre matches the explicit series") {
    for (double alpha : {0.1, 1.0, 2.6, 7.0}) {
        for (int n = 0; n <= 12; ++n) {
            for (double x : {0.05, 0.7, 3.0, 9.5, 20.0}) {
                const double ref = oracle::series_laguerre(n, alpha, x);
                CHECK(laguerre({n, alpha}, x) == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("three-term recurrence holds") {
    for (double alpha : {0.1, 1.0, 2.6, 7.0}) {
        for (int n = 1; n < 30; ++n) {
            for (double x = 0.5; x <= 50.0; x += 3.7) {
                const double lhs = (n + 1) * laguerre({n + 1, alpha}, x);
                const double rhs = (2 * n + 1 + alpha - x) * laguerre({n, alpha}, x) - (n + alpha) * laguerre({n - 1, alpha}, x);
                const double scale = std::max({std::abs(lhs), std::abs((n + alpha) * laguerre({n - 1, alpha}, x)), 1.0});
                CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("laguerre derivative") {
    CHECK(laguerre_derivative({0, 1.0}, 5.0) == 0.0);
    CHECK(laguerre_derivative({1, 2.0}, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    const auto f = [](double x) { return laguerre({4, 1.3}, x); };
    CHECK(laguerre_derivative({4, 1.3}, 0.8) == doctest::Approx(oracle::derivative(f, 0.8, 1e-2)).epsilon(1e-8));
    for (double alpha : {0.5, 3.0}) {
        for (int n = 1; n <= 8; ++n) {
            for (double x : {0.3, 1.9, 6.1}) {
                const auto g = [&](double t) { return laguerre({n, alpha}, t); };
                const double fd = oracle::derivative(g, x, 1e-2);
                if (std::abs(fd) > 1e-3) {
                    CHECK(laguerre_derivative({n, alpha}, x) == doctest::Approx(fd).epsilon(1e-8));
                }
            }
        }
    }
}

TEST_CASE("log gamma") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(10.5) == doctest::Approx(std::log(oracle::gamma_product(10.5))).epsilon(1e-13));
    for (double x = 0.5; x <= 60.0; x += 0.5) {
        CHECK(log_gamma(x) == doctest::Approx(std::log(oracle::gamma_product(x))).epsilon(1e-12).scale(1.0));
    }
    CHECK_THROWS_AS((void)log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS((void)log_gamma(-2.5), std::domain_error);
}

TEST_CASE("weighted norm closed form against quadrature") {
    CHECK(laguerre_weighted_norm(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    const auto direct = [](int n, double alpha) {
        return oracle::simpson(
            [&](double x) {
                const double l = oracle::series_laguerre(n, alpha, x);
                return std::pow(x, alpha + 1.0) * std::exp(-x) * l * l;
            },
            0.0, 200.0, 200000);
    };
    CHECK(direct(0, 2.0) == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(laguerre_weighted_norm(0, 2.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(laguerre_weighted_norm(2, 1.0) == doctest::Approx(direct(2, 1.0)).epsilon(1e-10));
    CHECK(laguerre_weighted_norm(2, 1.0) ==
          doctest::Approx(integrate_adaptive(
                              [](double x) {
                                  const double l = laguerre({2, 1.0}, x);
                                  return x * x * std::exp(-x) * l * l;
                              },
                              0.0, 200.0))
              .epsilon(1e-10));
    for (int n = 0; n <= 6; ++n) {
        for (double alpha : {0.5, 1.0, 3.0, 6.0}) {
            CHECK(laguerre_weighted_norm(n, alpha) == doctest::Approx(direct(n, alpha)).epsilon(1e-9));
        }
    }
}
