#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "bincube/cube.hpp"
#include "bincube/errors.hpp"
#include "bincube/regions.hpp"
#include "bincube/specfun.hpp"
#include "gen.hpp"
#include "support.hpp"

using namespace bincube;
using cplx = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int bit(std::uint32_t x, int j) { return static_cast<int>((x >> j) & 1U); }

cplx brute_fourier(const CubeFunction& f, std::span<const double> xi) {
  cplx s = 0.0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    double dot = 0.0;
    for (int j = 0; j < f.dim(); ++j) dot += bit(x, j) * xi[j];
    s += f(x) * std::polar(1.0, -kTwoPi * dot);
  }
  return s;
}

std::size_t radix3(const std::vector<int>& v) {
  std::size_t idx = 0, w = 1;
  for (int c : v) {
    idx += static_cast<std::size_t>(c) * w;
    w *= 3;
  }
  return idx;
}

Eigen::VectorXd brute_convolve(const RealCubeFunction& f, const RealCubeFunction& g) {
  const int d = f.dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(std::pow(3, d)));
  for (std::uint32_t x = 0; x < f.size(); ++x)
    for (std::uint32_t y = 0; y < g.size(); ++y) {
      std::vector<int> s(d);
      for (int j = 0; j < d; ++j) s[j] = bit(x, j) + bit(y, j);
      out(static_cast<Eigen::Index>(radix3(s))) += f(x) * g(y);
    }
  return out;
}

// Number of 2κ-tuples in A with a₁ + … + a_κ = a_{κ+1} + … + a_{2κ}, via
// the distribution of κ-fold sums.
long long brute_energy(const CubeSet& a, int kappa) {
  std::map<std::vector<int>, long long> sums{{std::vector<int>(a.dim(), 0), 1}};
  for (int k = 0; k < kappa; ++k) {
    std::map<std::vector<int>, long long> next;
    for (const auto& [s, c] : sums)
      for (auto m : a.members()) {
        auto t = s;
        for (int j = 0; j < a.dim(); ++j) t[j] += bit(m, j);
        next[t] += c;
      }
    sums = std::move(next);
  }
  long long e = 0;
  for (const auto& [s, c] : sums) e += c * c;
  return e;
}

double brute_energy_tilde(const CubeSet& a, double kappa) {
  std::map<std::vector<int>, long long> c;
  for (auto x : a.members())
    for (auto y : a.members()) {
      std::vector<int> z(a.dim());
      for (int j = 0; j < a.dim(); ++j) z[j] = bit(x, j) - bit(y, j);
      ++c[z];
    }
  double s = 0.0;
  for (const auto& [z, n] : c) s += std::pow(static_cast<double>(n), kappa);
  return s;
}

CubeSet permute(const CubeSet& a, const std::vector<int>& perm) {
  std::vector<std::uint32_t> out;
  for (auto m : a.members()) {
    std::uint32_t t = 0;
    for (int j = 0; j < a.dim(); ++j) t |= static_cast<std::uint32_t>(bit(m, j)) << perm[j];
    out.push_back(t);
  }
  return CubeSet(a.dim(), out);
}

CubeSet reflect(const CubeSet& a) {
  std::vector<std::uint32_t> out;
  const std::uint32_t mask = (std::uint32_t{1} << a.dim()) - 1;
  for (auto m : a.members()) out.push_back(m ^ mask);
  return CubeSet(a.dim(), out);
}

QuadratureSpec spec_for(int d) {
  return d == 1 ? QuadratureSpec::adaptive(1e-12) : QuadratureSpec::tensor(1e-10);
}

}  // namespace

TEST_SUITE("cube") {
  TEST_CASE("cube array validation") {
    CHECK_THROWS_AS(RealCubeFunction(0, Eigen::VectorXd::Ones(1)), DomainError);
    CHECK_THROWS_AS(RealCubeFunction(2, Eigen::VectorXd::Ones(3)), DomainError);
    Eigen::VectorXd bad = Eigen::VectorXd::Ones(4);
    bad(2) = std::nan("");
    CHECK_THROWS_AS(RealCubeFunction(2, bad), DomainError);
    CHECK_THROWS_AS(CubeSet(2, {4}), DomainError);
    CHECK(CubeSet(3, {5, 1, 5, 2}).members() == std::vector<std::uint32_t>{1, 2, 5});
  }

  TEST_CASE("fourier examples") {
    const auto one = complexify(RealCubeFunction::ones(1));
    const double z[1] = {0.0}, h[1] = {0.5};
    CHECK(std::abs(fourier_eval(one, z) - 2.0) < 1e-15);
    CHECK(std::abs(fourier_eval(one, h)) < 1e-15);
    const auto one2 = complexify(RealCubeFunction::ones(2));
    const double xi[2] = {1.0 / 3, 0.25};
    const cplx want = (1.0 + std::polar(1.0, -kTwoPi / 3)) * (1.0 + std::polar(1.0, -kTwoPi / 4));
    CHECK(std::abs(fourier_eval(one2, xi) - want) < 1e-14);
  }

  TEST_CASE("property: fourier_eval matches the direct sum") {
    auto r = gen::rng(61);
    for (int i = 0; i < 200; ++i) {
      const int d = gen::integer(r, 1, 8);
      const auto f = random_cube_function(d, r);
      const auto xi = gen::values(r, d, 0.0, 1.0);
      CHECK(std::abs(fourier_eval(f, xi) - brute_fourier(f, xi)) < 1e-12 * std::max(1.0, f.values().norm()));
    }
  }

  TEST_CASE("q = 4 norms of the full cube") {
    for (int d = 1; d <= 6; ++d) {
      const auto f = complexify(RealCubeFunction::ones(d));
      CHECK(std::abs(lq_hat_norm(f, 4.0, spec_for(d)).value - std::pow(6.0, d / 4.0)) < 1e-12 * std::pow(6.0, d / 4.0));
    }
  }

  TEST_CASE("property: Plancherel") {
    auto r = gen::rng(62);
    for (int i = 0; i < 200; ++i) {
      const int d = gen::integer(r, 1, 12);
      const auto f = random_cube_function(d, r);
      const double n2 = lq_hat_norm(f, 2.0, spec_for(std::min(d, 3))).value;
      CHECK(std::abs(n2 * n2 - f.values().squaredNorm()) <= 1e-12 * std::max(1.0, f.values().squaredNorm()));
    }
  }

  TEST_CASE("even-q exact path agrees with quadrature") {
    auto r = gen::rng(63);
    for (int d = 1; d <= 2; ++d)
      for (int i = 0; i < 4; ++i) {
        const auto f = random_cube_function(d, r);
        for (double q : {4.0, 6.0}) {
          const auto exact = lq_hat_norm(f, q, spec_for(d));
          // Integrate |f̂|^q directly with the torus rules.
          auto quad = d == 1 ? integrate_circle(
                                   [&](double t) {
                                     const double xi[1] = {t};
                                     return std::pow(std::abs(fourier_eval(f, xi)), q);
                                   },
                                   QuadratureSpec::adaptive(1e-13))
                             : integrate_torus(
                                   [&](std::span<const double> xi) {
                                     return std::pow(std::abs(fourier_eval(f, xi)), q);
                                   },
                                   d, QuadratureSpec::tensor(1e-12));
          const double qn = std::pow(quad.value, 1.0 / q);
          CHECK(std::abs(exact.value - qn) <= std::max(3.0 * quad.error_bound, 1e-11 * qn));
        }
      }
  }

  TEST_CASE("non-even q agrees with direct quadrature of |f^|^q") {
    auto r = gen::rng(75);
    for (int d = 2; d <= 3; ++d)
      for (double q : {1.3, 2.5, 3.0, 5.5}) {
        const auto f = random_cube_function(d, r);
        const auto reduced = lq_hat_norm(f, q, QuadratureSpec::tensor(1e-10));
        const auto direct = integrate_torus(
            [&](std::span<const double> xi) { return std::pow(std::abs(fourier_eval(f, xi)), q); }, d,
            QuadratureSpec::tensor(1e-9));
        const double dn = std::pow(direct.value, 1.0 / q);
        CHECK(std::abs(reduced.value - dn) <= 3.0 * (reduced.error_bound + dn * direct.error_bound / direct.value));
      }
    // One zero slice: |f̂| does not depend on the last coordinate.
    CubeFunction::Vector v = CubeFunction::Vector::Zero(4);
    v(0) = 1.0;
    v(1) = cplx(0.0, 2.0);
    const auto one_slice = lq_hat_norm(CubeFunction(2, v), 3.0, QuadratureSpec::tensor(1e-12));
    const auto d1 = lq_hat_norm(CubeFunction(1, v.head(2)), 3.0, QuadratureSpec::adaptive(1e-13));
    CHECK(std::abs(one_slice.value - d1.value) < 1e-11);
  }

  TEST_CASE("tensorization of norms") {
    auto r = gen::rng(64);
    for (int i = 0; i < 20; ++i) {
      const auto a = random_cube_function(1, r), b = random_cube_function(1, r);
      CubeFunction::Vector v(4);
      for (std::uint32_t x = 0; x < 4; ++x) v(x) = a(x & 1U) * b(x >> 1);
      const CubeFunction ab(2, v);
      for (double q : {3.0, 4.0}) {
        const double na = lq_hat_norm(a, q, spec_for(1)).value, nb = lq_hat_norm(b, q, spec_for(1)).value;
        CHECK(std::abs(lq_hat_norm(ab, q, spec_for(2)).value - na * nb) < 1e-9 * na * nb);
      }
    }
  }

  TEST_CASE("lp norm and spec errors") {
    Eigen::VectorXd v(3);
    v << 3.0, 4.0, 0.0;
    CHECK(lp_norm(v, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    Eigen::VectorXd huge(2);
    huge << 1e300, 1e300;
    CHECK(std::isfinite(lp_norm(huge, 3.0)));
    const auto f = random_cube_function(4, *std::make_unique<std::mt19937_64>(1));
    CHECK_THROWS_AS(lq_hat_norm(f, 3.0, QuadratureSpec::tensor(1e-8)), UsageError);
  }

  TEST_CASE("Hausdorff-Young ratio examples") {
    const double p4 = hy_endpoint_p(4.0);
    for (int d = 1; d <= 4; ++d) {
      const auto rep = hy_ratio(complexify(RealCubeFunction::ones(d)), p4, 4.0, spec_for(std::min(d, 3)));
      CHECK(std::abs(rep.values["ratio"].get<double>() - 1.0) < 1e-9);
    }
    for (double q : {2.5, 3.0, 4.0}) {
      const auto rep = hy_ratio(CubeFunction::delta(2, 2), hy_endpoint_p(q), q, spec_for(2));
      CHECK(std::abs(rep.values["ratio"].get<double>() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("property: Hausdorff-Young on random functions") {
    auto r = gen::rng(65);
    for (double q : {2.5, 3.0, 4.0}) {
      const double p = hy_endpoint_p(q);
      for (int i = 0; i < 40; ++i) {
        const int d = gen::integer(r, 1, 2);
        CHECK(hy_ratio(random_cube_function(d, r), p, q, spec_for(d)).passed());
      }
    }
  }

  TEST_CASE("convolution examples") {
    const auto one1 = convolve(RealCubeFunction::ones(1), RealCubeFunction::ones(1));
    CHECK(one1.values == Eigen::Vector3d(1, 2, 1));
    const auto one2 = convolve(RealCubeFunction::ones(2), RealCubeFunction::ones(2));
    const Eigen::Vector3d b(1, 2, 1);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(one2.values(i + 3 * j) == b(i) * b(j));
    auto r = gen::rng(66);
    const auto f = random_nonneg_function(3, r);
    const auto fd = convolve(f, RealCubeFunction::delta(3, 0));
    for (std::uint32_t x = 0; x < 8; ++x) {
      std::vector<int> c{bit(x, 0), bit(x, 1), bit(x, 2)};
      CHECK(fd.values(static_cast<Eigen::Index>(radix3(c))) == f(x));
    }
    CHECK_THROWS_AS(convolve(RealCubeFunction::ones(2), RealCubeFunction::ones(3)), UsageError);
  }

  TEST_CASE("property: convolution matches the double loop") {
    auto r = gen::rng(67);
    for (int i = 0; i < 50; ++i) {
      const int d = gen::integer(r, 1, 6);
      const auto f = random_nonneg_function(d, r), g = random_nonneg_function(d, r);
      CHECK((convolve(f, g).values - brute_convolve(f, g)).cwiseAbs().maxCoeff() < 1e-12 * std::pow(2.0, d));
    }
  }

  TEST_CASE("Young ratio") {
    for (double q : {1.5, 2.0, 3.0}) {
      const double p = young_endpoint_p(q);
      for (int d = 1; d <= 6; ++d) {
        const auto ones = RealCubeFunction::ones(d);
        CHECK(std::abs(young_ratio(ones, ones, p, q).values["ratio"].get<double>() - 1.0) < 1e-12);
      }
      const auto delta = RealCubeFunction::delta(3, 0);
      CHECK(young_ratio(delta, delta, p, q).values["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-15));
      auto r = gen::rng(68);
      for (int i = 0; i < 100; ++i) {
        const int d = gen::integer(r, 1, 8);
        CHECK(young_ratio(random_nonneg_function(d, r), random_nonneg_function(d, r), p, q).passed());
      }
    }
    CHECK_THROWS_AS(young_ratio(RealCubeFunction::ones(2), RealCubeFunction::ones(2), 1.9, 2.0), UsageError);
  }

  TEST_CASE("energy examples") {
    const auto spec = QuadratureSpec::adaptive(1e-12);
    const CubeSet pair(1, {0, 1});
    CHECK(energy_E_exact(pair, 1) == 2);
    CHECK(energy_E_exact(pair, 2) == 6);
    CHECK(energy_E(pair, 2.0, spec).value == 6.0);
    for (int d = 1; d <= 8; ++d)
      for (int k = 1; k <= 3; ++k) {
        const auto full = CubeSet::full(d);
        const boost::multiprecision::cpp_int base(std::llround(binom_gen(2 * k, k)));
        const boost::multiprecision::cpp_int want = boost::multiprecision::pow(base, static_cast<unsigned>(d));
        CHECK(energy_E_exact(full, k) == want);
        CHECK(energy_E_tilde(full, k) == doctest::Approx(std::pow(std::exp2(k) + 2.0, d)).epsilon(1e-14));
      }
    CHECK(energy_E_tilde(CubeSet(2, {0, 3}), 2.0) == 6.0);
    // Non-integer κ, d = 1: ∫|1+e|^{2κ} = binom(2κ, κ).
    CHECK(std::abs(energy_E(pair, 1.5, spec).value - binom_gen(3.0, 1.5)) < 1e-10);
  }

  TEST_CASE("property: energies match brute-force counts") {
    auto r = gen::rng(69);
    for (int i = 0; i < 60; ++i) {
      const int d = gen::integer(r, 1, 5);
      const auto a = random_cube_set(d, gen::uniform(r, 0.2, 0.9), r);
      if (a.size() == 0) continue;
      CHECK(energy_E_exact(a, 1) == a.size());
      for (int k = 2; k <= 3; ++k) CHECK(energy_E_exact(a, k) == brute_energy(a, k));
      CHECK(energy_E_tilde(a, 1.0) == doctest::Approx(double(a.size() * a.size())));
      for (double kappa : {1.5, 2.0, 3.0})
        CHECK(std::abs(energy_E_tilde(a, kappa) - brute_energy_tilde(a, kappa)) <= 1e-12 * brute_energy_tilde(a, kappa));
    }
  }

  TEST_CASE("property: energies are invariant under permutation and reflection") {
    auto r = gen::rng(70);
    for (int i = 0; i < 40; ++i) {
      const int d = gen::integer(r, 2, 7);
      const auto a = random_cube_set(d, 0.4, r);
      if (a.size() == 0) continue;
      std::vector<int> perm(d);
      for (int j = 0; j < d; ++j) perm[j] = j;
      std::shuffle(perm.begin(), perm.end(), r);
      const auto b = permute(a, perm), c = reflect(a);
      for (int k = 2; k <= 3; ++k) {
        CHECK(energy_E_exact(b, k) == energy_E_exact(a, k));
        CHECK(energy_E_exact(c, k) == energy_E_exact(a, k));
      }
      CHECK(energy_E_tilde(b, 2.5) == doctest::Approx(energy_E_tilde(a, 2.5)).epsilon(1e-14));
      CHECK(energy_E_tilde(c, 2.5) == doctest::Approx(energy_E_tilde(a, 2.5)).epsilon(1e-14));
    }
  }

  TEST_CASE("property: E_kappa^{1/kappa} is nondecreasing in kappa") {
    auto r = gen::rng(71);
    for (int i = 0; i < 8; ++i) {
      const int d = gen::integer(r, 1, 2);
      const auto a = random_cube_set(d, 0.7, r);
      if (a.size() < 2) continue;
      double prev = 0.0;
      for (double kappa : {1.0, 1.5, 2.0, 2.5, 3.0}) {
        const auto e = energy_E(a, kappa, spec_for(d));
        const double v = std::pow(e.value, 1.0 / kappa);
        CHECK(v >= prev * (1 - 1e-10));
        prev = v;
      }
    }
  }

  TEST_CASE("energy bounds") {
    for (int d = 1; d <= 3; ++d)
      for (double kappa : {1.5, 2.0, 3.0}) {
        const auto rep = energy_bounds_check(CubeSet::full(d), kappa, spec_for(d));
        CHECK(rep.passed());
        CHECK(std::abs(rep.values["E"].get<double>() / rep.values["E_bound"].get<double>() - 1) < 1e-9);
      }
    const auto single = energy_bounds_check(CubeSet(3, {5}), 2.0, spec_for(3));
    CHECK(single.passed());
    CHECK(single.values["E"].get<double>() == 1.0);
    auto r = gen::rng(72);
    for (int i = 0; i < 100; ++i) {
      const int d = gen::integer(r, 1, 8);
      const auto a = random_cube_set(d, gen::uniform(r, 0.1, 0.9), r);
      if (a.size() == 0) continue;
      CHECK(energy_bounds_check(a, 2.0, spec_for(std::min(d, 3))).passed());
      CHECK(energy_bounds_check(a, 3.0, spec_for(std::min(d, 3))).passed());
    }
  }

  TEST_CASE("induction step") {
    const double p4 = hy_endpoint_p(4.0);
    const auto full = induction_step_check(complexify(RealCubeFunction::ones(2)), p4, 4.0, spec_for(2));
    CHECK(full.passed());
    const double hn = full.values["hat_norm"].get<double>();
    CHECK(std::abs(hn - full.values["minkowski"].get<double>()) < 1e-9 * hn);
    CHECK(std::abs(hn - full.values["slices"].get<double>()) < 1e-9 * hn);
    CubeFunction::Vector v = CubeFunction::Vector::Zero(4);
    v(0) = 0.3;
    v(1) = cplx(0.2, 0.7);
    const auto slice = induction_step_check(CubeFunction(2, v), p4, 4.0, spec_for(2));
    CHECK(std::abs(slice.values["hat_norm"].get<double>() - slice.values["minkowski"].get<double>()) < 1e-9);
    auto r = gen::rng(73);
    const double p3 = hy_endpoint_p(3.0);
    for (int i = 0; i < 30; ++i) CHECK(induction_step_check(random_cube_function(2, r), p3, 3.0, spec_for(2)).passed());
    CHECK_THROWS_AS(induction_step_check(random_cube_function(1, r), p3, 3.0, spec_for(1)), UsageError);
  }

  TEST_CASE("text format round trip") {
    const auto a = parse_cube_set("# comment\n101\n\n001\n110\n");
    CHECK(a.dim() == 3);
    CHECK(a.members() == std::vector<std::uint32_t>{1, 5, 6});
    CHECK(format_cube_set(a) == "001\n101\n110\n");
    auto r = gen::rng(74);
    for (int i = 0; i < 50; ++i) {
      const int d = gen::integer(r, 1, 10);
      const auto s = random_cube_set(d, 0.3, r);
      CHECK(parse_cube_set(format_cube_set(s), d).members() == s.members());
    }
    CHECK_THROWS(parse_cube_set("10\n1x1\n"));
    CHECK_THROWS(parse_cube_set("10\n101\n"));
  }

  TEST_CASE("triadic optimal exponent") {
    const auto t = triadic_optimal_p(1e-10);
    CHECK(std::abs(t.p - 1.4702039297) < 1e-8);
    double best = 0.0;
    const auto arg = maximize_l4_ratio(3, 1.48, 0x7121ad1cULL, &best);
    CHECK(best > 1.0);
    CHECK(l4_ratio_1d(arg, 1.48) == doctest::Approx(best).epsilon(1e-12));
    const auto bin = optimal_l4_exponent(2, 1e-11);
    CHECK(std::abs(bin.p - 4.0 / std::log2(6.0)) < 1e-8);
    // Hand check of the ratio at a point: (1,1,1)∗(1,1,1) = (1,2,3,2,1).
    const double ones[3] = {1, 1, 1};
    CHECK(l4_ratio_1d(ones, 2.0) == doctest::Approx(19.0 / 9.0).epsilon(1e-15));
  }
}
