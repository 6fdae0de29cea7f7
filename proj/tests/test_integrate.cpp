#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bincube/errors.hpp"
#include "bincube/integrate.hpp"
#include "gen.hpp"

using namespace bincube;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod_pow(double t, double s) { return std::pow(std::abs(1.0 + std::polar(1.0, -kTwoPi * t)), s); }

}  // namespace

TEST_SUITE("integrate") {
  TEST_CASE("circle examples") {
    const auto spec = QuadratureSpec::adaptive(1e-13);
    const auto one = integrate_circle([](double) { return 1.0; }, spec);
    CHECK(one.value == 1.0);
    CHECK(std::abs(integrate_circle([](double t) { return std::cos(kTwoPi * t); }, spec).value) < 1e-14);
    CHECK(std::abs(integrate_circle([](double t) { return mod_pow(t, 4.0); }, spec).value - 6.0) < 1e-10);
  }

  TEST_CASE("circle error bound covers the true error on |1+e|^s") {
    const auto spec = QuadratureSpec::adaptive(1e-12);
    for (double s : {1.0, 2.5, 3.0, 5.0, 7.5}) {
      // ∫|1+e^{2πit}|^s dt = binom(s, s/2)
      const double want = std::tgamma(s + 1.0) / std::pow(std::tgamma(s / 2.0 + 1.0), 2);
      const auto est = integrate_circle([s](double t) { return mod_pow(t, s); }, spec);
      CHECK(est.converged);
      CHECK(std::abs(est.value - want) <= std::max(est.error_bound, 1e-13 * want));
    }
  }

  TEST_CASE("even-symmetric integration agrees with the full circle") {
    const auto spec = QuadratureSpec::adaptive(1e-13);
    auto f = [](double t) { return std::pow(1.3 + std::cos(kTwoPi * t), 2.7); };
    CHECK(std::abs(integrate_circle(f, spec).value - integrate_circle_even(f, spec).value) < 1e-12);
  }

  TEST_CASE("torus examples") {
    const auto spec = QuadratureSpec::tensor(1e-12);
    CHECK(std::abs(integrate_torus([](std::span<const double>) { return 1.0; }, 2, spec).value - 1.0) < 1e-14);
    const auto e1 = integrate_torus([](std::span<const double> x) { return mod_pow(x[0], 2.0); }, 1, spec);
    CHECK(std::abs(e1.value - 2.0) < 1e-10);
    auto f = [](std::span<const double> x) { return mod_pow(x[0], 4.0) * mod_pow(x[1], 4.0); };
    CHECK(std::abs(integrate_torus(f, 2, spec).value - 36.0) < 1e-8);
    // Brute-force grid sum, exact for trigonometric polynomials of degree < n.
    double s = 0.0;
    const int n = 16;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double x[2] = {double(i) / n, double(j) / n};
        s += f(x);
      }
    CHECK(std::abs(s / (n * n) - 36.0) < 1e-10);
  }

  TEST_CASE("tensor rule rejects d > 3, qmc rejects d > 10") {
    auto f = [](std::span<const double>) { return 1.0; };
    CHECK_THROWS_AS(integrate_torus(f, 4, QuadratureSpec::tensor(1e-8)), UsageError);
    CHECK_THROWS_AS(integrate_torus(f, 11, QuadratureSpec::qmc(1 << 12, 1)), UsageError);
  }

  TEST_CASE("spec validation") {
    QuadratureSpec s = QuadratureSpec::tensor(1e-8);
    s.nodes_per_axis = 8;
    CHECK_THROWS_AS(s.validate(), UsageError);
    QuadratureSpec q = QuadratureSpec::qmc(1 << 9, 1);
    CHECK_THROWS_AS(q.validate(), UsageError);
    QuadratureSpec a = QuadratureSpec::adaptive(0.0);
    CHECK_THROWS_AS(a.validate(), UsageError);
  }

  TEST_CASE("qmc estimates carry a statistical flag and cover the truth") {
    auto f = [](std::span<const double> x) {
      double v = 1.0;
      for (double t : x) v *= mod_pow(t, 2.0);
      return v;
    };
    for (int d : {4, 6}) {
      const auto a = integrate_torus(f, d, QuadratureSpec::qmc(1 << 16, 1));
      const auto b = integrate_torus(f, d, QuadratureSpec::qmc(1 << 16, 2));
      CHECK(a.statistical);
      const double want = std::pow(2.0, d);
      CHECK(std::abs(a.value - want) <= a.error_bound + 1e-12);
      CHECK(std::abs(a.value - b.value) <= a.error_bound + b.error_bound);
    }
  }

  TEST_CASE("identical spec gives bit-identical estimates") {
    auto f = [](std::span<const double> x) { return mod_pow(x[0], 3.0) * mod_pow(x[1] + x[2], 1.5); };
    for (auto spec : {QuadratureSpec::tensor(1e-8), QuadratureSpec::qmc(1 << 14, 7)}) {
      const auto a = integrate_torus(f, 3, spec), b = integrate_torus(f, 3, spec);
      CHECK(a.value == b.value);
      CHECK(a.error_bound == b.error_bound);
      CHECK(a.evaluations == b.evaluations);
    }
  }

  TEST_CASE("doubling nodes per axis does not increase the error on a smooth battery") {
    for (double s : {2.5, 3.0, 4.5}) {
      const double want = std::tgamma(s + 1.0) / std::pow(std::tgamma(s / 2.0 + 1.0), 2);
      auto f = [s](double t) { return mod_pow(t, s); };
      auto coarse = QuadratureSpec::adaptive(1e-12);
      auto fine = coarse;
      fine.nodes_per_axis = 2 * coarse.nodes_per_axis;
      const double e0 = std::abs(integrate_circle(f, coarse).value - want);
      const double e1 = std::abs(integrate_circle(f, fine).value - want);
      CHECK(e1 <= std::max(e0, 4e-15 * want));
    }
  }

  TEST_CASE("pairwise_sum is exact on integers and order-fixed") {
    std::vector<double> v(1000);
    for (int i = 0; i < 1000; ++i) v[i] = i;
    CHECK(pairwise_sum(v) == 499500.0);
    CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
  }

  TEST_CASE("budget exhaustion is reported, not hidden") {
    QuadratureSpec s = QuadratureSpec::adaptive(1e-15);
    s.max_evaluations = 200;
    const auto est = integrate_circle([](double t) { return std::sqrt(std::abs(t - 0.3137)); }, s);
    CHECK_FALSE(est.converged);
    CHECK_THROWS_AS(require_converged(est, "test"), NumericalFailure);
  }
}
