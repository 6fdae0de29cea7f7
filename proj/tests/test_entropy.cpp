#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bincube/cube.hpp"
#include "bincube/entropy.hpp"
#include "bincube/errors.hpp"
#include "gen.hpp"
#include "support.hpp"

using namespace bincube;

namespace {

const double kW = 1.0 / std::numbers::ln2 - 1.0;

QuadratureSpec spec_for(int d) {
  return d == 1 ? QuadratureSpec::adaptive(1e-12) : QuadratureSpec::tensor(1e-9);
}

CubeFunction uniform_unit(int d) {
  return CubeFunction(d, CubeFunction::Vector::Constant(Eigen::Index{1} << d, std::pow(2.0, -d / 2.0)));
}

PmfOnLattice random_pmf(int d, std::mt19937_64& r) {
  auto f = random_nonneg_function(d, r);
  // Sparsify a little so low-entropy pmfs also appear.
  Eigen::VectorXd v = f.values();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (gen::uniform(r, 0, 1) < 0.3) v(i) = 0.0;
  if (v.sum() == 0.0) v(0) = 1.0;
  return PmfOnLattice::normalized(RealCubeFunction(d, v));
}

}  // namespace

TEST_SUITE("entropy") {
  TEST_CASE("pmf entropy examples") {
    for (int d = 1; d <= 10; ++d) {
      const auto u = PmfOnLattice::normalized(RealCubeFunction::ones(d));
      CHECK(std::abs(entropy_pmf(u) - d) < 1e-12);
    }
    CHECK(entropy_pmf(PmfOnLattice::on_cube(RealCubeFunction::delta(3, 4))) == 0.0);
    const auto h = convolve(RealCubeFunction::ones(1), RealCubeFunction::ones(1));
    LatticeFunction n{1, h.values / 4.0};
    CHECK(std::abs(entropy_pmf(PmfOnLattice::on_lattice(n)) - 1.5) < 1e-15);
    CHECK_THROWS_AS(PmfOnLattice::on_cube(RealCubeFunction::ones(2)), UsageError);
  }

  TEST_CASE("hat entropy examples") {
    for (int d = 1; d <= 3; ++d) {
      const auto e = entropy_hat(uniform_unit(d), d == 3 ? QuadratureSpec::tensor(1e-9) : spec_for(d));
      CHECK(std::abs(e.value + d * kW) < 1e-7);
    }
    CHECK(std::abs(entropy_hat(CubeFunction::delta(2, 0), spec_for(2)).value) < 1e-14);
    // −∫cos²(πt) log₂cos²(πt) dt through the 1-d uniform function.
    const auto e1 = entropy_hat(uniform_unit(1), QuadratureSpec::adaptive(1e-13));
    CHECK(std::abs(-e1.value - (1.0 + 2.0 * (1.0 / (2.0 * std::numbers::ln2) - 1.0))) < 1e-9);
    CHECK_THROWS_AS(entropy_hat(complexify(RealCubeFunction::ones(1)), spec_for(1)), UsageError);
  }

  TEST_CASE("uncertainty examples") {
    for (int d = 1; d <= 2; ++d) {
      const auto rep = uncertainty_check(uniform_unit(d), spec_for(d));
      CHECK(rep.passed());
      CHECK(std::abs(rep.values["refined_sum"].get<double>()) < 1e-7);
    }
    const auto pm = uncertainty_check(CubeFunction::delta(2, 1), spec_for(2));
    CHECK(pm.passed());
    CHECK(std::abs(pm.values["refined_sum"].get<double>()) < 1e-12);
  }

  TEST_CASE("property: uncertainty on random functions, refined stronger than classical") {
    auto r = gen::rng(81);
    for (int i = 0; i < 60; ++i) {
      const int d = gen::integer(r, 1, 2);
      const auto f = normalize_l2(random_cube_function(d, r));
      const auto rep = uncertainty_check(f, spec_for(d));
      CHECK(rep.passed());
      const double hz = rep.values["H_Z"].get<double>();
      if (hz > 0.0) CHECK(rep.values["refined_sum"].get<double>() < rep.values["classical_sum"].get<double>());
    }
  }

  TEST_CASE("entropy of sums examples") {
    for (int d = 1; d <= 10; ++d) {
      const auto u = PmfOnLattice::normalized(RealCubeFunction::ones(d));
      const auto rep = entropy_sum_check(u, u);
      CHECK(rep.passed());
      CHECK(std::abs(rep.values["H_conv"].get<double>() - 1.5 * d) < 1e-10);
      CHECK(std::abs(rep.values["margin_three_quarters"].get<double>()) < 1e-10);
    }
    const auto pm = PmfOnLattice::on_cube(RealCubeFunction::delta(2, 3));
    CHECK(entropy_sum_check(pm, pm).values["H_conv"].get<double>() == 0.0);
  }

  TEST_CASE("property: entropy of sums on random pairs") {
    auto r = gen::rng(82);
    for (int i = 0; i < 300; ++i) {
      const int d = gen::integer(r, 1, 8);
      const auto f = random_pmf(d, r), g = random_pmf(d, r);
      const auto rep = entropy_sum_check(f, g);
      CHECK(check_passed(rep, "three_quarters_bound"));
      CHECK(check_passed(rep, "half_bound"));
      CHECK(check_passed(rep, "dominates_max"));
    }
  }

  TEST_CASE("binomial probe") {
    CHECK(std::abs(binomial_entropy(1).h_n - 1.0) < 1e-14);
    CHECK(std::abs(binomial_entropy(1).h_2n - 1.5) < 1e-14);
    const auto b2 = binomial_entropy(100), b3 = binomial_entropy(1000), b4 = binomial_entropy(10000);
    CHECK(b4.ratio - 1 < 0.07);
    CHECK(b3.ratio < b2.ratio);
    CHECK(b4.ratio < b3.ratio);
    // Gaussian approximation (1/2)log₂(πen/2) to within O(1/n).
    CHECK(std::abs(b4.h_n - 0.5 * std::log2(std::numbers::pi * std::numbers::e * 1e4 / 2)) < 1e-3);
    CHECK(binomial_entropy_probe(1000).passed());
    const std::vector<long> ns{1, 10};
    const auto csv = binomial_probe_csv(ns);
    CHECK(csv.rfind("n,H_n,H_2n,ratio\n1,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK_THROWS_AS(binomial_entropy(0), UsageError);
  }
}
