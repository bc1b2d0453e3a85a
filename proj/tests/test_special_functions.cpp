#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperchord/special_functions.hpp"

using namespace hyperchord;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("log_gamma hits closed-form values") {
  // ln Gamma(1/2) = ln sqrt(pi), ln Gamma(5) = ln 24.
  CHECK(log_gamma(0.5) == doctest::Approx(0.57236494292470009).epsilon(1e-14));
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(std::fabs(log_gamma(1.0)) < 1e-14);
  CHECK(std::fabs(log_gamma(2.0)) < 1e-14);
}

TEST_CASE("log_gamma matches the C library across the working range") {
  for (double e = -3.0; e <= 6.0; e += 0.0625) {
    const double x = std::pow(10.0, e);
    const double ours = log_gamma(x);
    const double ref = std::lgamma(x);
    const double scale = std::max(1.0, std::fabs(ref));
    CHECK(std::fabs(ours - ref) <= 1e-13 * scale);
  }
}

TEST_CASE("log_gamma satisfies the recurrence") {
  for (double x = 0.017; x < 40.0; x *= 1.37) {
    const double lhs = log_gamma(x + 1.0) - log_gamma(x);
    CHECK(lhs == doctest::Approx(std::log(x)).epsilon(1e-12));
  }
}

TEST_CASE("log_gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("beta hits closed-form values") {
  CHECK(beta(1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(beta(0.5, 0.5) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(beta(3.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("regularized incomplete beta hits closed-form values") {
  // I_x(1/2, 1/2) = (2/pi) asin(sqrt(x)); at x = 3/4 this is 2/3.
  CHECK(regularized_incomplete_beta(0.75, 0.5, 0.5) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // I_x(1, b) = 1 - (1-x)^b; at x = 3/4, b = 1/2 this is 1/2.
  CHECK(regularized_incomplete_beta(0.75, 1.0, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(regularized_incomplete_beta(0.0, 2.5, 0.5) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 2.5, 0.5) == 1.0);
}

TEST_CASE("regularized incomplete beta is monotone with correct symmetry") {
  const double shapes[] = {0.5, 1.0, 1.5, 2.5, 7.5, 31.5};
  for (double a : shapes) {
    for (double b : shapes) {
      double prev = -1.0;
      for (int i = 0; i <= 200; ++i) {
        const double x = static_cast<double>(i) / 200.0;
        const double v = regularized_incomplete_beta(x, a, b);
        CHECK(v >= prev);
        prev = v;
        const double mirror = regularized_incomplete_beta(1.0 - x, b, a);
        CHECK(std::fabs(v + mirror - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("regularized incomplete beta satisfies the shape recursion") {
  // I_x(a+1, b) = I_x(a, b) - x^a (1-x)^b / (a B(a, b)), exercised at the
  // half-integer shapes the chord formulas use.
  const double b = 0.5;
  for (int n = 2; n <= 32; ++n) {
    const double a = 0.5 * (n - 1);
    for (int i = 1; i < 100; ++i) {
      const double x = static_cast<double>(i) / 100.0;
      const double lhs = regularized_incomplete_beta(x, a + 1.0, b);
      const double rhs = regularized_incomplete_beta(x, a, b) -
                         std::exp(a * std::log(x) + b * std::log1p(-x)) / (a * beta(a, b));
      CHECK(std::fabs(lhs - rhs) <= 1e-10);
    }
  }
}

TEST_CASE("beta equals its trigonometric integral form") {
  // B(x, y) = 2 int_0^{pi/2} sin^{2x-1} t cos^{2y-1} t dt.
  const double shapes[] = {0.5, 1.0, 1.5, 2.5, 4.0};
  for (double x : shapes) {
    for (double y : shapes) {
      const double direct = beta(x, y);
      const double viaTrig =
          2.0 * integrate(
                    [&](double t) {
                      const double s = std::sin(t);
                      const double c = std::cos(t);
                      return std::pow(s, 2.0 * x - 1.0) * std::pow(c, 2.0 * y - 1.0);
                    },
                    0.0, 0.5 * pi, QuadratureSpec{1e-10, 1 << 20});
      CHECK(std::fabs(direct - viaTrig) <= 1e-8 * std::max(1.0, direct));
    }
  }
}

TEST_CASE("regularized incomplete beta derivative matches its density kernel") {
  // d/dx I_x(a,b) = x^{a-1}(1-x)^{b-1} / B(a,b), probed by central differences.
  const double h = 1e-6;
  const double shapes[] = {0.5, 1.5, 2.5, 7.5};
  for (double a : shapes) {
    for (double b : shapes) {
      for (double x : {0.15, 0.35, 0.5, 0.65, 0.85}) {
        const double fd = (regularized_incomplete_beta(x + h, a, b) -
                           regularized_incomplete_beta(x - h, a, b)) /
                          (2.0 * h);
        const double kernel =
            std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0) / beta(a, b);
        CHECK(std::fabs(fd - kernel) <= 1e-5 * std::max(1.0, kernel));
      }
    }
  }
}

TEST_CASE("regularized incomplete beta validates inputs") {
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 1.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.1, 1.0, 1.0), std::domain_error);
}

TEST_CASE("integrate reaches tolerance on smooth integrands") {
  const QuadratureSpec spec{1e-12, 1 << 20};
  CHECK(std::fabs(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, spec) -
                  (std::exp(1.0) - 1.0)) <= 1e-12);
  CHECK(std::fabs(integrate([](double x) { return std::sin(x); }, 0.0, pi, spec) - 2.0) <=
        1e-12);
  // int_0^{pi/2} t cos^2 t dt = pi^2/16 - 1/4.
  CHECK(std::fabs(integrate([](double t) { return t * std::cos(t) * std::cos(t); }, 0.0,
                            0.5 * pi, spec) -
                  0.36685027506808487) <= 1e-12);
}

TEST_CASE("integrate handles an integrable endpoint singularity") {
  const double v = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                             QuadratureSpec{1e-10, 1 << 20});
  CHECK(std::fabs(v - 2.0) <= 1e-7);
}

TEST_CASE("integrate of an empty interval is zero") {
  CHECK(integrate([](double) { return 42.0; }, 1.5, 1.5) == 0.0);
}

TEST_CASE("integrate throws accuracy_error with a best estimate when starved") {
  bool thrown = false;
  try {
    integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, QuadratureSpec{1e-14, 4});
  } catch (const accuracy_error& e) {
    thrown = true;
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.best_estimate() == doctest::Approx(2.0).epsilon(0.2));
  }
  CHECK(thrown);
}

TEST_CASE("integrate validates its interval and spec") {
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, QuadratureSpec{-1.0, 8}),
                  std::domain_error);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, QuadratureSpec{1e-8, 0}),
                  std::domain_error);
}
