// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bincube/certify.hpp"
#include "bincube/cube.hpp"
#include "bincube/entropy.hpp"
#include "bincube/errors.hpp"
#include "bincube/fourpoint.hpp"
#include "bincube/regions.hpp"
#include "bincube/specfun.hpp"
#include "bincube/twopoint.hpp"

using namespace bincube;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

const double kLog2Six = std::log2(6.0);
const std::vector<double> kTwoPointQ{2.1, 2.5, 3.0, 4.0, 6.0, 10.0};

// Quadrature used for random-instance sweeps on T^d.
QuadratureSpec torus_spec(int d, std::uint64_t seed) {
  if (d == 1) return QuadratureSpec::adaptive(1e-12);
  if (d <= 3) return QuadratureSpec::tensor(1e-10);
  return QuadratureSpec::qmc(1 << 14, seed);
}

Outcome endpoint_values() {
  const double e1 = std::abs(hy_endpoint_p(2.0) - 2.0);
  const double e2 = std::abs(hy_endpoint_p(4.0) - 4.0 / kLog2Six);
  const double e3 = std::abs(young_endpoint_p(2.0) - 4.0 / kLog2Six);
  const double worst = std::max({e1, e2, e3});
  return {worst <= 1e-12, "max deviation " + num(worst)};
}

Outcome section2() {
  const auto rep = section2_report(log_grid(2.0, 512.0, 64));
  const auto* f = rep.first_failure();
  return {rep.passed(), std::to_string(rep.checks.size()) + " checks" + (f ? ", failed " + f->id : "")};
}

Outcome f_max_and_legendre() {
  Outcome o;
  double worst_max = 0.0, worst_leg = 0.0;
  for (double q : kTwoPointQ) {
    const auto rep = check_F_max(q, 1001, 1e-10, 1e-8);
    if (!rep.passed()) {
      o.passed = false;
      o.detail += "q=" + num(q) + " failed " + rep.first_failure()->id + "; ";
    }
    worst_max = std::max(worst_max, rep.values["max"].get<double>());
    for (int i = 0; i < 500; ++i) {
      const double x = i / 1000.0;
      const double f = F(q, x);
      worst_leg = std::max(worst_leg, std::abs(f - F_via_legendre(q, x)));
      // Symmetric half through x ↦ 1 − x.
      worst_leg = std::max(worst_leg, std::abs(F(q, 1.0 - x) - F_via_legendre(q, x)));
    }
  }
  if (worst_leg > 1e-9) o.passed = false;
  o.detail += "max F " + num(worst_max, 15) + ", Legendre gap " + num(worst_leg);
  return o;
}

Outcome ode_battery() {
  double worst = 0.0;
  for (double q : kTwoPointQ)
    for (int i = 1; i <= 9; ++i) worst = std::max(worst, ode_residual(q, 0.05 * i));
  return {worst <= 1e-7, "max scaled residual " + num(worst)};
}

Outcome perturbative() {
  Outcome o;
  double worst_slope = 0.0, worst_curv = 0.0;
  for (double q : kTwoPointQ) {
    const auto rep = perturbative_check(q, 1e-4, 1e-3, 1e-2);
    if (!rep.passed()) {
      o.passed = false;
      o.detail += "q=" + num(q) + " failed " + rep.first_failure()->id + "; ";
    }
    for (const auto& c : rep.checks) {
      if (c.id == "slope_at_zero") worst_slope = std::max(worst_slope, std::abs(c.value / c.bound - 1.0));
      if (c.id == "curvature_at_half") worst_curv = std::max(worst_curv, std::abs(c.value / c.bound - 1.0));
    }
  }
  o.detail += "slope rel err " + num(worst_slope) + ", curvature rel err " + num(worst_curv);
  return o;
}

Outcome phi_zero() {
  Outcome o;
  int tested = 0;
  for (double q : {2.1, 2.5, 3.0, 4.0, 6.0, 10.0, 20.0}) {
    const auto rep = phi_zero_analysis(q);
    ++tested;
    if (!rep.passed()) {
      o.passed = false;
      o.detail += "q=" + num(q) + " failed " + rep.first_failure()->id + "; ";
    }
  }
  o.detail += std::to_string(tested) + " values of q, one zero each";
  return o;
}

Outcome g_max() {
  Outcome o;
  double worst = 0.0;
  for (double q : {1.5, 2.0, 3.0, 5.0}) {
    const auto rep = check_G_max(q, 201, 1e-10, 1e-8);
    if (!rep.passed()) {
      o.passed = false;
      o.detail += "q=" + num(q) + " failed " + rep.first_failure()->id + "; ";
    }
    worst = std::max(worst, rep.values["max"].get<double>());
  }
  o.detail += "max G " + num(worst, 15);
  return o;
}

Outcome cosh_lemma() {
  Outcome o;
  std::vector<double> t(10000);
  for (int i = 0; i < 10000; ++i) t[i] = -50.0 + 100.0 * i / 9999.0;
  double worst2 = INFINITY;
  for (double q : {1.2, 2.0, 3.0, 3.9}) {
    const auto rep = cosh_check(young_endpoint_p(q), q, t);
    if (!rep.passed()) {
      o.passed = false;
      o.detail += "q=" + num(q) + " failed " + rep.first_failure()->id + "; ";
    }
    worst2 = std::min(worst2, rep.values["min_log_gap_second"].get<double>());
  }
  o.detail += "smallest log gap of the strict inequality " + num(worst2);
  return o;
}

Outcome certificate() {
  const auto c = certify_grid(paper_certificate_request());
  std::vector<double> qg(500), ug(500);
  for (int i = 0; i < 500; ++i) {
    qg[i] = 1.0 + 3.0 * i / 499.0;
    ug[i] = 3.0 * i / 499.0;
  }
  const auto lip = lipschitz_bounds_check(qg, ug);
  const bool nodes = c.nodes_checked == 2101LL * 901LL;
  const bool minimum = std::abs(c.worst_node.value - 0.0293596409) <= 1e-6;
  return {c.pass && nodes && minimum && lip.passed(),
          std::to_string(c.nodes_checked) + " nodes, min " + num(c.worst_node.value, 10) + " at (" +
              num(c.worst_node.q) + ", " + num(c.worst_node.u) + "), floor " + num(c.guaranteed_floor) +
              ", max |dqq| " + num(lip.values["max_abs_dqq"].get<double>()) + ", max |duq| " +
              num(lip.values["max_abs_duq"].get<double>())};
}

Outcome pde_battery() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> uq(1.05, 5.0), ux(0.01, 0.99);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double q = uq(rng), x = ux(rng), y = ux(rng);
    worst = std::max(worst, pde_residual(q, x, y));
  }
  return {worst <= 1e-9, "max scaled residual " + num(worst)};
}

Outcome not_a_max() {
  double worst = 0.0;
  for (int i = 0; i <= 70; ++i) {
    const double p = 1.2 + 0.01 * i;
    worst = std::max(worst, hessian_center(p, q_on_log6_curve(p)).grad.cwiseAbs().maxCoeff());
  }
  const double flip = hessian_sign_flip();
  return {worst <= 1e-11 && std::abs(flip - 4.0 / 3.0) <= 1e-9,
          "max |grad| " + num(worst) + ", flip at p = " + num(flip, 15)};
}

Outcome energies() {
  using boost::multiprecision::cpp_int;
  Outcome o;
  for (int d = 1; d <= 8; ++d) {
    if (energy_E_exact(CubeSet::full(d), 2) != boost::multiprecision::pow(cpp_int(6), static_cast<unsigned>(d))) {
      o.passed = false;
      o.detail += "E_2 mismatch at d=" + std::to_string(d) + "; ";
    }
  }
  double worst_tilde = 0.0;
  for (double kappa : {1.5, 2.0, 3.0})
    for (int d = 1; d <= 8; ++d) {
      const double want = std::pow(std::exp2(kappa) + 2.0, d);
      worst_tilde = std::max(worst_tilde, std::abs(energy_E_tilde(CubeSet::full(d), kappa) / want - 1.0));
    }
  if (worst_tilde > 1e-9) o.passed = false;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> dens(0.1, 0.9);
  const double kappas[] = {1.5, 2.0, 3.0};
  int failures = 0, tested = 0;
  for (int i = 0; i < 1000; ++i) {
    const int d = dim(rng);
    auto a = random_cube_set(d, dens(rng), rng);
    while (a.size() == 0) a = random_cube_set(d, dens(rng), rng);
    ++tested;
    if (!energy_bounds_check(a, kappas[i % 3], torus_spec(d, 1000 + i)).passed()) ++failures;
  }
  if (failures) o.passed = false;
  o.detail += "E_2 = 6^d for d <= 8, tilde rel err " + num(worst_tilde) + ", " + std::to_string(tested) +
              " random sets, " + std::to_string(failures) + " failures";
  return o;
}

Outcome ratio_sweeps() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  const double hq[] = {2.5, 3.0, 4.0};
  const double yq[] = {1.5, 2.0, 3.0};
  std::uniform_int_distribution<int> hd(1, 3), yd(1, 8);
  int hy_fail = 0, young_fail = 0;
  double hy_max = 0.0, young_max = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double q = hq[i % 3];
    const int d = hd(rng);
    const auto rep = hy_ratio(random_cube_function(d, rng), hy_endpoint_p(q), q, torus_spec(d, i));
    if (!rep.passed()) ++hy_fail;
    hy_max = std::max(hy_max, rep.values["ratio"].get<double>());
  }
  for (int i = 0; i < 1000; ++i) {
    const double q = yq[i % 3];
    const int d = yd(rng);
    const auto f = random_nonneg_function(d, rng), g = random_nonneg_function(d, rng);
    const auto rep = young_ratio(f, g, young_endpoint_p(q), q);
    if (!rep.passed()) ++young_fail;
    young_max = std::max(young_max, rep.values["ratio"].get<double>());
  }
  double hy_eq = 0.0, young_eq = 0.0;
  for (double q : hq)
    for (int d = 1; d <= 3; ++d) {
      const auto rep = hy_ratio(complexify(RealCubeFunction::ones(d)), hy_endpoint_p(q), q, torus_spec(d, 0));
      hy_eq = std::max(hy_eq, std::abs(rep.values["ratio"].get<double>() - 1.0));
    }
  for (double q : yq)
    for (int d = 1; d <= 8; ++d) {
      const auto ones = RealCubeFunction::ones(d);
      young_eq = std::max(young_eq, std::abs(young_ratio(ones, ones, young_endpoint_p(q), q).values["ratio"].get<double>() - 1.0));
    }
  o.passed = hy_fail == 0 && young_fail == 0 && hy_eq <= 1e-7 && young_eq <= 1e-9;
  o.detail = "HY max ratio " + num(hy_max, 10) + " (" + std::to_string(hy_fail) + " failures), Young max ratio " +
             num(young_max, 10) + " (" + std::to_string(young_fail) + " failures), equality gaps HY " + num(hy_eq) +
             ", Young " + num(young_eq);
  return o;
}

Outcome entropy_criteria() {
  Outcome o;
  double worst_defect = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const CubeFunction u(d, CubeFunction::Vector::Constant(Eigen::Index{1} << d, std::pow(2.0, -d / 2.0)));
    const auto spec = d == 1 ? QuadratureSpec::adaptive(1e-13) : QuadratureSpec::tensor(d == 2 ? 1e-11 : 1e-9);
    const auto rep = uncertainty_check(u, spec);
    worst_defect = std::max(worst_defect, std::abs(rep.values["refined_sum"].get<double>()));
  }
  const auto c = integrate_circle(
      [](double t) {
        const double c2 = std::cos(std::numbers::pi * t) * std::cos(std::numbers::pi * t);
        return c2 > 0.0 ? c2 * std::log2(c2) : 0.0;
      },
      QuadratureSpec::adaptive(1e-14));
  const double const_err = std::abs(c.value - (1.0 / (2.0 * std::numbers::ln2) - 1.0));
  double worst_sum = 0.0;
  for (int d = 1; d <= 10; ++d) {
    const auto u = PmfOnLattice::normalized(RealCubeFunction::ones(d));
    const auto h = convolve(RealCubeFunction(d, u.masses), RealCubeFunction(d, u.masses));
    worst_sum = std::max(worst_sum, std::abs(entropy_pmf(PmfOnLattice::on_lattice(h)) - 1.5 * d));
  }
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 8);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const int d = dim(rng);
    const auto f = PmfOnLattice::normalized(random_nonneg_function(d, rng));
    const auto g = PmfOnLattice::normalized(random_nonneg_function(d, rng));
    if (!entropy_sum_check(f, g).passed()) ++failures;
  }
  o.passed = worst_defect <= 1e-7 && const_err <= 1e-9 && worst_sum <= 1e-12 && failures == 0;
  o.detail = "uniform defect " + num(worst_defect) + ", constant err " + num(const_err) + ", (3/2)d err " +
             num(worst_sum) + ", random pairs " + std::to_string(failures) + " failures";
  return o;
}

Outcome triadic() {
  const auto t = triadic_optimal_p(1e-10);
  const double err = std::abs(t.p - 1.4702039297);
  return {err <= 1e-8, "p = " + num(t.p, 13) + ", |err| " + num(err)};
}

Outcome binomial() {
  const auto b2 = binomial_entropy(100), b3 = binomial_entropy(1000), b4 = binomial_entropy(10000);
  const bool ok = b4.ratio - 1.0 < 0.07 && b3.ratio < b2.ratio && b4.ratio < b3.ratio;
  return {ok, "ratio - 1: " + num(b2.ratio - 1) + ", " + num(b3.ratio - 1) + ", " + num(b4.ratio - 1)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "endpoint values", 1, endpoint_values},
      {2, "endpoint curve facts", 1, section2},
      {3, "F_q <= 1 and Legendre agreement", 30, f_max_and_legendre},
      {4, "ODE residual battery", 10, ode_battery},
      {5, "perturbative expansions", 5, perturbative},
      {6, "unique zero of phi", 1, phi_zero},
      {7, "G_q <= 1", 10, g_max},
      {8, "cosh inequalities", 5, cosh_lemma},
      {9, "grid certificate", 60, certificate},
      {10, "PDE residual battery", 5, pde_battery},
      {11, "Hessian at the center", 1, not_a_max},
      {12, "additive energies", 60, energies},
      {13, "Hausdorff-Young and Young sweeps", 120, ratio_sweeps},
      {14, "entropy", 60, entropy_criteria},
      {15, "triadic optimal exponent", 30, triadic},
      {16, "binomial probe", 10, binomial},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.passed && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d %s  %-34s %7.2fs (budget %gs)  %s%s\n", c.number, pass ? "PASS" : "FAIL",
                c.title.c_str(), secs, c.budget_s, o.detail.c_str(), in_time ? "" : " [over budget]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
