#include "bincube/fourpoint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "bincube/errors.hpp"
#include "bincube/regions.hpp"
#include "bincube/twopoint.hpp"

namespace bincube {
namespace {

constexpr double kLn2 = std::numbers::ln2;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void require_q(double q, const char* who) {
  if (!std::isfinite(q) || !(q > 1.0)) throw DomainError(std::string(who) + ": needs finite q > 1");
}

// One factor t^e and its first two derivatives in t.
struct Pow3 {
  double v, d1, d2;
};

Pow3 pow3(double t, double e) {
  const double v = std::pow(t, e);
  return {v, e * std::pow(t, e - 1.0), e * (e - 1.0) * std::pow(t, e - 2.0)};
}

// Reflected factor (1−t)^e, derivatives in t.
Pow3 rpow3(double t, double e) {
  const auto f = pow3(1.0 - t, e);
  return {f.v, -f.d1, f.d2};
}

}  // namespace

CurveParam::CurveParam(double value) : a(value) {
  if (!std::isfinite(value) || !(value > 0.0) || value > 1.0)
    throw DomainError("curve parameter must lie in (0, 1]");
}

SecondOrder H_derivatives(double p, double q, double r, double x, double y) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
    throw DomainError("H_derivatives: needs (x, y) in the open unit square");
  const double sp = 1.0 / p, sq = 1.0 / q;
  // Outer terms T1 = (1−x)^{r/p}(1−y)^{r/q}, T3 = x^{r/p} y^{r/q}.
  const auto a1 = rpow3(x, r * sp), b1 = rpow3(y, r * sq);
  const auto a3 = pow3(x, r * sp), b3 = pow3(y, r * sq);
  // Middle term M^r with M = (1−x)^{1/p} y^{1/q} + x^{1/p} (1−y)^{1/q}.
  const auto mx0 = rpow3(x, sp), my0 = pow3(y, sq);
  const auto mx1 = pow3(x, sp), my1 = rpow3(y, sq);
  const double M = mx0.v * my0.v + mx1.v * my1.v;
  const double Mx = mx0.d1 * my0.v + mx1.d1 * my1.v;
  const double My = mx0.v * my0.d1 + mx1.v * my1.d1;
  const double Mxx = mx0.d2 * my0.v + mx1.d2 * my1.v;
  const double Myy = mx0.v * my0.d2 + mx1.v * my1.d2;
  const double Mxy = mx0.d1 * my0.d1 + mx1.d1 * my1.d1;
  const double Mr = std::pow(M, r), Mr1 = std::pow(M, r - 1.0), Mr2 = std::pow(M, r - 2.0);

  SecondOrder out;
  out.value = a1.v * b1.v + Mr + a3.v * b3.v;
  out.grad(0) = a1.d1 * b1.v + r * Mr1 * Mx + a3.d1 * b3.v;
  out.grad(1) = a1.v * b1.d1 + r * Mr1 * My + a3.v * b3.d1;
  out.hess(0, 0) = a1.d2 * b1.v + r * (r - 1.0) * Mr2 * Mx * Mx + r * Mr1 * Mxx + a3.d2 * b3.v;
  out.hess(1, 1) = a1.v * b1.d2 + r * (r - 1.0) * Mr2 * My * My + r * Mr1 * Myy + a3.v * b3.d2;
  out.hess(0, 1) = a1.d1 * b1.d1 + r * (r - 1.0) * Mr2 * Mx * My + r * Mr1 * Mxy + a3.d1 * b3.d1;
  out.hess(1, 0) = out.hess(0, 1);
  return out;
}

double G(double q, double x, double y) {
  require_q(q, "G");
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw DomainError("G: needs (x, y) in the unit square");
  const double p = young_endpoint_p(q);
  const double k = q / p, s = 1.0 / p;
  const double mid = std::pow(1.0 - x, s) * std::pow(y, s) + std::pow(x, s) * std::pow(1.0 - y, s);
  return std::pow((1.0 - x) * (1.0 - y), k) + std::pow(mid, q) + std::pow(x * y, k);
}

SecondOrder G_derivatives(double q, double x, double y) {
  require_q(q, "G_derivatives");
  const double p = young_endpoint_p(q);
  return H_derivatives(p, p, q, x, y);
}

Report four_point_check(const FourPointInput& in, double rel_tol) {
  for (double v : {in.alpha0, in.alpha1, in.beta0, in.beta1})
    if (!std::isfinite(v) || v < 0.0)
      throw DomainError("four_point_check: inputs must be finite and nonnegative");
  if (!std::isfinite(in.p) || !std::isfinite(in.q))
    throw UsageError("four_point_check: exponents must be finite");
  if (!in_range({Exponent(in.p), Exponent(in.q), Regime::young_binary}))
    throw UsageError("four_point_check: (p, q) lies outside the binary Young range");
  Report rep;
  rep.suite = "fourpoint.four_point";
  rep.inputs = {{"alpha0", in.alpha0}, {"alpha1", in.alpha1}, {"beta0", in.beta0},
                {"beta1", in.beta1},   {"p", in.p},           {"q", in.q}};
  const double ma = std::max(in.alpha0, in.alpha1), mb = std::max(in.beta0, in.beta1);
  double lhs = 0.0, rhs = 0.0;
  if (ma > 0.0 && mb > 0.0) {
    const double a0 = in.alpha0 / ma, a1 = in.alpha1 / ma;
    const double b0 = in.beta0 / mb, b1 = in.beta1 / mb;
    const double s = std::pow(a0 * b0, in.q) + std::pow(a0 * b1 + a1 * b0, in.q) +
                     std::pow(a1 * b1, in.q);
    lhs = ma * mb * std::pow(s, 1.0 / in.q);
    rhs = ma * mb * std::pow(std::pow(a0, in.p) + std::pow(a1, in.p), 1.0 / in.p) *
          std::pow(std::pow(b0, in.p) + std::pow(b1, in.p), 1.0 / in.p);
  }
  rep.values = {{"lhs", lhs}, {"rhs", rhs}};
  rep.add({"lhs_le_rhs", "four-point inequality", lhs <= rhs * (1.0 + rel_tol), lhs, rhs, rel_tol,
           ""});
  return rep;
}

Report check_G_max(double q, int grid_size, double tol, double equality_tol,
                   std::vector<std::array<double, 3>>* surface) {
  require_q(q, "check_G_max");
  if (grid_size < 101) throw UsageError("check_G_max: grid_size must be >= 101");
  Report rep;
  rep.suite = "fourpoint.G_max";
  rep.inputs = {{"q", q}, {"grid_size", grid_size}};
  const int n = grid_size;
  const double h = 1.0 / (n - 1);

  Eigen::MatrixXd vals(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vals(i, j) = G(q, i * h, j * h);

  double best = -1.0, bx = 0.0, by = 0.0;
  auto consider = [&](double x, double y, double v) {
    if (v > best) best = v, bx = x, by = y;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) consider(i * h, j * h, vals(i, j));

  // Refinement patches of half-width h around the five equality points.
  const std::array<std::array<double, 2>, 5> eq_pts = {
      {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}, {0.5, 0.5}}};
  const int m = 24;
  for (const auto& c : eq_pts)
    for (int i = -m; i <= m; ++i)
      for (int j = -m; j <= m; ++j) {
        const double x = c[0] + h * i / m, y = c[1] + h * j / m;
        if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) continue;
        consider(x, y, G(q, x, y));
      }

  double dist = std::numeric_limits<double>::infinity();
  for (const auto& c : eq_pts) dist = std::min(dist, std::hypot(bx - c[0], by - c[1]));
  rep.add({"max_le_one", "G_q <= 1", best <= 1.0 + tol, best, 1.0, tol,
           "at (" + fmt(bx) + ", " + fmt(by) + ")"});
  rep.add({"argmax_at_equality_point", "maxima at the corners and the center", dist <= 1e-6, dist,
           1e-6, 0.0, ""});
  for (const auto& c : eq_pts) {
    const double dev = std::abs(G(q, c[0], c[1]) - 1.0);
    rep.add({"equality_at_(" + fmt(c[0]) + "," + fmt(c[1]) + ")", "G_q = 1 at five points",
             dev <= equality_tol, dev, 0.0, equality_tol, ""});
  }

  // Interior grid maxima away from the center: reported only.
  int off_center_max = 0;
  for (int i = 1; i + 1 < n; ++i)
    for (int j = 1; j + 1 < n; ++j) {
      const double v = vals(i, j);
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && vals(i + di, j + dj) >= v) {
            is_max = false;
            break;
          }
      if (is_max && std::hypot(i * h - 0.5, j * h - 0.5) > 2.0 * h) ++off_center_max;
    }
  rep.values = {{"max", best}, {"argmax_x", bx}, {"argmax_y", by},
                {"interior_grid_maxima_off_center", off_center_max}};

  if (surface) {
    surface->clear();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) surface->push_back({i * h, j * h, vals(i, j)});
  }
  return rep;
}

double log_cosh(double x) {
  const double a = std::abs(x);
  if (a < 1.0) {
    const double s = std::sinh(0.5 * a);
    return std::log1p(2.0 * s * s);  // cosh a − 1 = 2 sinh²(a/2)
  }
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

namespace {

// log(c^s − 1) for c = cosh(x), x ≠ 0.
double log_cosh_pow_minus_one(double x, double s) {
  return std::log(std::expm1(s * log_cosh(x)));
}

}  // namespace

Report cosh_check(double p, double q, std::span<const double> t_grid, double margin) {
  require_q(q, "cosh_check");
  const double pe = young_endpoint_p(q);
  if (std::abs(p - pe) > 1e-12 * pe)
    throw UsageError("cosh_check: p must be the Young endpoint exponent of q");
  Report rep;
  rep.suite = "fourpoint.cosh";
  rep.inputs = {{"p", p}, {"q", q}, {"t_points", t_grid.size()}};
  const double s = 2.0 * q / p;
  // log of 2(2q−p)/p
  const double c2 = std::log(2.0 * (2.0 * q - p) / p);

  double worst1 = std::numeric_limits<double>::infinity(), at1 = 0.0;
  double worst2 = std::numeric_limits<double>::infinity(), at2 = 0.0;
  for (double t : t_grid) {
    if (t != 0.0) {
      // 2^{s}((cosh(pt/2q))^{s} − 1) ≥ 2^q((cosh(t/q))^q − 1), in logs
      const double lhs = s * kLn2 + log_cosh_pow_minus_one(p * t / (2.0 * q), s);
      const double rhs = q * kLn2 + log_cosh_pow_minus_one(t / q, q);
      if (lhs - rhs < worst1) worst1 = lhs - rhs, at1 = t;
    }
    // (2cosh(t/q))^q > 2(2q−p)/p · cosh(pt/q)
    const double l2 = q * (kLn2 + log_cosh(t / q));
    const double r2 = c2 + log_cosh(p * t / q);
    if (l2 - r2 < worst2) worst2 = l2 - r2, at2 = t;
  }
  if (std::isfinite(worst1))
    rep.add({"first_inequality", "first cosh inequality", worst1 >= -margin, worst1, 0.0, margin,
             "smallest log gap, at t=" + fmt(at1)});
  rep.add({"second_inequality_strict", "second cosh inequality", worst2 > margin, worst2, 0.0,
           margin, "smallest log gap, at t=" + fmt(at2)});
  // At t = 0 both sides of the first inequality vanish.
  const double l0 = std::exp2(s) * std::expm1(s * log_cosh(0.0));
  const double r0 = std::exp2(q) * std::expm1(q * log_cosh(0.0));
  rep.add({"first_equality_at_zero", "equality at t = 0", l0 == 0.0 && r0 == 0.0,
           std::abs(l0 - r0), 0.0, 0.0, ""});
  const double gap0 = q * kLn2 - c2;
  rep.add({"second_at_zero", "2^q > 2(2q-p)/p", gap0 > margin, gap0, 0.0, margin, ""});
  rep.values = {{"min_log_gap_first", worst1}, {"min_log_gap_second", worst2}};
  return rep;
}

Report pprime_check(std::span<const double> q_grid) {
  Report rep;
  rep.suite = "fourpoint.pprime";
  rep.inputs = {{"q_points", q_grid.size()}};
  // Unchecked endpoint formula so the difference quotient works at q = 1.
  auto p_of = [](double q) { return 2.0 * q / (q + std::log1p(std::exp2(1.0 - q)) / kLn2); };
  const double step = 1e-5;
  double worst_fd = 0.0, worst_upper = -std::numeric_limits<double>::infinity();
  double min_dp = std::numeric_limits<double>::infinity();
  double lo2 = std::numeric_limits<double>::infinity(), hi2 = -lo2;
  double worst_fd2 = 0.0;
  for (double q : q_grid) {
    if (!(q >= 1.0 && q <= 4.0)) throw UsageError("pprime_check: grid must lie in [1, 4]");
    const double p = young_endpoint_p(q);
    const double dp = young_endpoint_dp(q);
    const double d2p = young_endpoint_d2p(q);
    const double fd = (p_of(q + step) - p_of(q - step)) / (2.0 * step);
    const double fd2 = (p_of(q + 1e-4) - 2.0 * p_of(q) + p_of(q - 1e-4)) / 1e-8;
    worst_fd = std::max(worst_fd, std::abs(fd - dp) / std::abs(dp));
    worst_fd2 = std::max(worst_fd2, std::abs(fd2 - d2p) / std::abs(d2p));
    min_dp = std::min(min_dp, dp);
    // p′ ≤ 3p/(4q) holds with equality at q = 1; compare as a ratio.
    worst_upper = std::max(worst_upper, dp / (3.0 * p / (4.0 * q)));
    const double r = -d2p * q * q / p;
    lo2 = std::min(lo2, r);
    hi2 = std::max(hi2, r);
  }
  rep.add({"dp_matches_difference", "closed form of p'", worst_fd <= 1e-6, worst_fd, 1e-6, 1e-6, ""});
  rep.add({"d2p_matches_difference", "closed form of p''", worst_fd2 <= 1e-4, worst_fd2, 1e-4, 1e-4,
           ""});
  rep.add({"dp_positive", "0 < p'", min_dp > 0.0, min_dp, 0.0, 0.0, ""});
  rep.add({"dp_upper", "p' <= 3p/(4q)", worst_upper <= 1.0 + 1e-12, worst_upper, 1.0, 1e-12,
           "largest ratio p' / (3p/(4q))"});
  rep.add({"d2p_lower", "2p/(5q^2) < -p''", lo2 > 0.4, lo2, 0.4, 0.0, "smallest -p'' q^2 / p"});
  rep.add({"d2p_upper", "-p'' < 4p/(5q^2)", hi2 < 0.8, hi2, 0.8, 0.0, "largest -p'' q^2 / p"});
  const double dp1 = young_endpoint_dp(1.0);
  rep.add({"dp_at_one", "p'(1) = 3/4", std::abs(dp1 - 0.75) <= 1e-8, dp1, 0.75, 1e-8, ""});
  return rep;
}

double theta_curve(CurveParam a, double x) { return a.a * x / (1.0 - x + a.a * x); }

double g_along_curve(double q, CurveParam a, double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("g_along_curve: needs x in (0, 1)");
  return G(q, x, theta_curve(a, x));
}

double curve_crossing_second_derivative(double q, CurveParam a) {
  require_q(q, "curve_crossing_second_derivative");
  const double p = young_endpoint_p(q);
  const double A = a.a, sa = std::sqrt(A);
  const double inner = -std::pow(std::pow(A, -0.5 / p) + std::pow(A, 0.5 / p), q) +
                       q / p * (1.0 / sa + sa) + 2.0 * (q - p) / p;
  return 2.0 * q / p * std::pow(A, (q - p) / (2.0 * p)) * std::pow(1.0 + sa, 2.0 * (p - q) / p) * inner;
}

PhiChain phi_chain(double q, CurveParam a, double u) {
  require_q(q, "phi_chain");
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("phi_chain: needs u > 0");
  const double p = young_endpoint_p(q);
  const double s = q / p, A0 = a.a;
  const double A = std::pow(1.0 + std::pow(A0, 1.0 / p), q);
  const double as = std::pow(A0, s);
  auto pw = [u](double e) { return std::pow(u, e); };
  PhiChain c;
  c.phi0 = -(1.0 + A0) * pw(2.0 * s) - 2.0 * A0 * pw(2.0 * s - 1.0) + A * pw(s + 1.0) -
           A0 * A * pw(s - 1.0) + 2.0 * as * u + (1.0 + A0) * as;
  c.phi0_prime = (-2.0 * q * (1.0 + A0) * pw(2.0 * s - 1.0) - 2.0 * (2.0 * q - p) * A0 * pw(2.0 * s - 2.0) +
                  (q + p) * A * pw(s) - (q - p) * A0 * A * pw(s - 2.0) + 2.0 * p * as) /
                 p;
  c.phi1 = (-2.0 * q * (2.0 * q - p) * (1.0 + A0) * pw(s + 1.0) -
            4.0 * (2.0 * q - p) * (q - p) * A0 * pw(s) + q * (q + p) * A * u * u -
            (q - p) * (q - 2.0 * p) * A0 * A) /
           (p * p);
  c.phi2 = (-2.0 * q * (2.0 * q - p) * (q + p) * (1.0 + A0) * pw(s - 1.0) -
            4.0 * q * (2.0 * q - p) * (q - p) * A0 * pw(s - 2.0) + 2.0 * p * q * (q + p) * A) /
           (p * p * p);
  c.phi2_prime = 2.0 * q * (q - p) * (2.0 * q - p) *
                 (-(q + p) * (1.0 + A0) * u - 2.0 * (q - 2.0 * p) * A0) /
                 (p * p * p * p * pw(3.0 - s));
  return c;
}

int phi0_sign_changes(double q, CurveParam a, int points) {
  const auto grid = log_grid(1e-6, 1e6, points);
  int changes = 0;
  double prev = 0.0;
  for (double u : grid) {
    const double v = phi_chain(q, a, u).phi0;
    if (v == 0.0) continue;
    if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
    prev = v;
  }
  return changes;
}

Report curve_check(double q, CurveParam a) {
  require_q(q, "curve_check");
  const double p = young_endpoint_p(q);
  const double k = q / p;
  Report rep;
  rep.suite = "fourpoint.curve";
  rep.inputs = {{"q", q}, {"a", a.a}};

  // (G(x, θ(x)) − 1)/x = −k(1+a) + Σ c x^e with e from {k−1, 1, k, 2k−1, 2, ...}.
  std::vector<double> ex = {k - 1.0, 1.0, k, 2.0 * k - 1.0, 2.0};
  std::sort(ex.begin(), ex.end());
  ex.erase(std::unique(ex.begin(), ex.end(), [](double u, double v) { return std::abs(u - v) < 1e-6; }),
           ex.end());
  std::vector<double> hs, vs;
  for (std::size_t i = 0; i <= ex.size(); ++i) {
    const double x = 1e-2 * std::pow(0.25, static_cast<double>(i));
    hs.push_back(x);
    vs.push_back((g_along_curve(q, a, x) - 1.0) / x);
  }
  const double slope = richardson(hs, vs, ex);
  const double slope_pred = -k * (1.0 + a.a);
  const double slope_err = std::abs(slope - slope_pred) / std::abs(slope_pred);
  rep.add({"slope_at_zero", "lim d/dx G(x, theta_a(x)) = -(q/p)(1+a)", slope_err <= 1e-4, slope,
           slope_pred, 1e-4, "relative error " + fmt(slope_err)});

  const double xc = 1.0 / (1.0 + std::sqrt(a.a));
  const double yc = theta_curve(a, xc);
  rep.add({"crossing_on_antidiagonal", "theta_a meets y = 1 - x at 1/(1+sqrt a)",
           std::abs(xc + yc - 1.0) <= 1e-14, std::abs(xc + yc - 1.0), 0.0, 1e-14, ""});
  const double d2 = curve_crossing_second_derivative(q, a);
  const double hh = 1e-4;
  const double fd = (g_along_curve(q, a, xc + hh) - 2.0 * g_along_curve(q, a, xc) +
                     g_along_curve(q, a, xc - hh)) /
                    (hh * hh);
  const double d2_err = std::abs(fd - d2) / std::abs(d2);
  rep.add({"crossing_second_derivative_formula", "closed form at the crossing", d2_err <= 1e-5, fd, d2,
           1e-5, "relative error " + fmt(d2_err)});
  rep.add({"crossing_second_derivative_negative", "local max at the crossing", d2 < 0.0, d2, 0.0, 0.0,
           ""});

  // (1−x+ax)^{2k} d/dx G(x, θ(x)) = k (u+1)^{1−3k} (u+a)^{k−1} φ₀(u), x = 1/(u+1).
  double worst = 0.0;
  for (double u : {0.05, 0.3, 0.9, 1.7, 4.0, 25.0}) {
    const double x = 1.0 / (u + 1.0);
    const double den = 1.0 - x + a.a * x;
    const auto g = G_derivatives(q, x, theta_curve(a, x));
    const double dtheta = a.a / (den * den);
    const double lhs = std::pow(den, 2.0 * k) * (g.grad(0) + g.grad(1) * dtheta);
    const double rhs = k * std::pow(u + 1.0, 1.0 - 3.0 * k) * std::pow(u + a.a, k - 1.0) *
                       phi_chain(q, a, u).phi0;
    const double scale = std::pow(den, 2.0 * k) * (std::abs(g.grad(0)) + std::abs(g.grad(1) * dtheta));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  rep.add({"derivative_factors_through_phi0", "curve derivative and phi_0", worst <= 1e-10, worst, 0.0,
           1e-10, ""});

  // Rolle chain relations against central differences.
  double chain = 0.0;
  for (double u : {0.2, 0.7, 1.0, 2.5, 6.0}) {
    const double e = 1e-5 * u;
    const auto c = phi_chain(q, a, u);
    const auto cp = phi_chain(q, a, u + e), cm = phi_chain(q, a, u - e);
    const double d0 = (cp.phi0 - cm.phi0) / (2.0 * e);
    const double dd0 = (cp.phi0_prime - cm.phi0_prime) / (2.0 * e);
    const double d1 = (cp.phi1 - cm.phi1) / (2.0 * e);
    const double d2c = (cp.phi2 - cm.phi2) / (2.0 * e);
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
    chain = std::max({chain, rel(d0, c.phi0_prime), rel(dd0, std::pow(u, k - 3.0) * c.phi1),
                      rel(d1, u * c.phi2), rel(d2c, c.phi2_prime)});
  }
  rep.add({"rolle_chain", "phi_0 ... phi_2 relations", chain <= 1e-6, chain, 0.0, 1e-6, ""});
  rep.values = {{"p", p}, {"slope", slope}, {"second_derivative", d2},
                {"phi0_sign_changes", phi0_sign_changes(q, a)}};
  return rep;
}

double pde_residual(double q, double x, double y) {
  require_q(q, "pde_residual");
  const double p = young_endpoint_p(q);
  const auto g = G_derivatives(q, x, y);
  const double s = 1.0 / p;
  auto at = [&](double X, double Y) { return p * p * std::pow(X, s) * std::pow(1.0 - Y, s); };
  auto bt = [&](double X, double Y) {
    const double u = std::pow(X, s) * std::pow(1.0 - Y, s);
    const double w = std::pow(1.0 - X, s) * std::pow(Y, s);
    return p * (1.0 - X) * X *
           (u * (p * (1.0 - 2.0 * X) + q * (2.0 * X + 2.0 * Y - 1.0)) -
            w * (p * (1.0 - 2.0 * X) + q * (2.0 * X + 2.0 * Y - 3.0)));
  };
  auto ct = [&](double X, double Y) {
    return q * std::pow(X, s) * std::pow(1.0 - Y, s) *
           (p * ((1.0 - X) * X + (1.0 - Y) * Y) + q * ((X + Y) * (X + Y) - X - 3.0 * Y));
  };
  const Eigen::Vector2d v((1.0 - x) * x, (1.0 - y) * y);
  const double quad = v.dot(g.hess * v);
  const double axy = at(x, y), ayx = at(y, x);
  const double bxy = bt(x, y), byx = bt(y, x);
  const double cxy = ct(x, y), cyx = ct(y, x);
  const double resid = (axy - ayx) * quad + bxy * g.grad(0) - byx * g.grad(1) + (cxy - cyx) * g.value;
  const double scale = (std::abs(axy) + std::abs(ayx)) * std::abs(quad) + std::abs(bxy * g.grad(0)) +
                       std::abs(byx * g.grad(1)) + (std::abs(cxy) + std::abs(cyx)) * std::abs(g.value);
  return std::abs(resid) / (scale + 1e-300);
}

double q_on_log6_curve(double p) {
  const double c = 0.5 * std::log2(6.0);
  const double inv_q = c - 1.0 / p;
  if (!(inv_q > 0.0 && inv_q <= 1.0)) throw DomainError("q_on_log6_curve: no q >= 1 for this p");
  return 1.0 / inv_q;
}

HessianCenter hessian_center(double p, double q) {
  if (!(p >= 1.0 && q >= 1.0) || !std::isfinite(p) || !std::isfinite(q))
    throw UsageError("hessian_center: needs finite p, q >= 1");
  const double c = 0.5 * std::log2(6.0);
  if (std::abs(1.0 / p + 1.0 / q - c) > 1e-10)
    throw UsageError("hessian_center: 1/p + 1/q must equal (1/2) log2 6");
  const auto h = H_derivatives(p, q, 2.0, 0.5, 0.5);
  const double f = std::exp2(4.0 - 2.0 / p - 2.0 / q);
  HessianCenter out;
  out.grad = h.grad;
  out.hess_diag = Eigen::Vector2d(f * (4.0 - 3.0 * p) / (p * p), f * (4.0 - 3.0 * q) / (q * q));
  out.hess_off_diag = h.hess(0, 1);
  if (out.hess_diag(0) < 0.0 && out.hess_diag(1) < 0.0) out.classification = "max";
  else if (out.hess_diag(0) > 0.0 && out.hess_diag(1) > 0.0) out.classification = "min";
  else out.classification = "saddle";
  return out;
}

double hessian_sign_flip(double lo, double hi, double tol) {
  auto entry = [](double p) { return hessian_center(p, q_on_log6_curve(p)).hess_diag(0); };
  double flo = entry(lo);
  if ((flo > 0.0) == (entry(hi) > 0.0)) throw NumericalFailure("hessian_sign_flip: no sign change", lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = entry(mid);
    if ((fm > 0.0) == (flo > 0.0)) lo = mid, flo = fm;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace bincube
