#include "bincube/twopoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "bincube/errors.hpp"
#include "bincube/regions.hpp"
#include "bincube/specfun.hpp"

namespace bincube {
namespace {

constexpr double kPi = std::numbers::pi;

void require_q(double q, const char* who) {
  if (!std::isfinite(q) || !(q > 2.0))
    throw DomainError(std::string(who) + ": needs finite q > 2");
}

void require_x(double x, double lo, double hi, bool open, const char* who) {
  const bool ok = open ? (x > lo && x < hi) : (x >= lo && x <= hi);
  if (!std::isfinite(x) || !ok) throw DomainError(std::string(who) + ": x out of range");
}

// Pieces of the integrand base S(x,t) = (u−v)² + 4uv cos²(πt), u = (1−x)^{1/p},
// v = x^{1/p}. The squared-difference form keeps S accurate near x = 1/2.
struct Base {
  double u;
  double v;
};

Base base_at(double p, double x) { return {std::pow(1.0 - x, 1.0 / p), std::pow(x, 1.0 / p)}; }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

QuadratureSpec f_quadrature() { return QuadratureSpec::adaptive(1e-14, 1e-13); }

double F(double q, double x, const QuadratureSpec& spec) {
  require_q(q, "F");
  require_x(x, 0.0, 1.0, false, "F");
  const double p = hy_endpoint_p(q);
  const auto [u, v] = base_at(p, x);
  const double diff2 = (u - v) * (u - v);
  const double cross = 4.0 * u * v;
  const double half_q = 0.5 * q;
  auto integrand = [=](double t) {
    const double c = std::cos(kPi * t);
    return std::pow(diff2 + cross * c * c, half_q);
  };
  const auto est = integrate_circle_even(integrand, spec);
  return require_converged(est, "F").value;
}

std::array<double, 3> F_with_derivatives(double q, double x, const QuadratureSpec& spec) {
  require_q(q, "F_with_derivatives");
  require_x(x, 0.0, 0.5, true, "F_with_derivatives");
  const double p = hy_endpoint_p(q);
  const double s = 1.0 / p;
  const double y = 1.0 - x;
  const double xy = x * y;
  // S = A + B + 2C cos 2πt, with A = y^{2s}, B = x^{2s}, C = (xy)^s.
  const double A1 = -2.0 * s * std::pow(y, 2.0 * s - 1.0);
  const double A2 = 2.0 * s * (2.0 * s - 1.0) * std::pow(y, 2.0 * s - 2.0);
  const double B1 = 2.0 * s * std::pow(x, 2.0 * s - 1.0);
  const double B2 = 2.0 * s * (2.0 * s - 1.0) * std::pow(x, 2.0 * s - 2.0);
  const double C1 = s * std::pow(xy, s - 1.0) * (1.0 - 2.0 * x);
  const double C2 = s * ((s - 1.0) * std::pow(xy, s - 2.0) * (1.0 - 2.0 * x) * (1.0 - 2.0 * x) -
                         2.0 * std::pow(xy, s - 1.0));
  const auto [u, v] = base_at(p, x);
  const double diff2 = (u - v) * (u - v);
  const double cross = 4.0 * u * v;
  const double h = 0.5 * q;

  auto S = [=](double t) {
    const double c = std::cos(kPi * t);
    return diff2 + cross * c * c;
  };
  auto cos2 = [](double t) { return std::cos(2.0 * kPi * t); };

  const auto f0 = integrate_circle_even([=](double t) { return std::pow(S(t), h); }, spec);
  const auto f1 = integrate_circle_even(
      [=](double t) {
        const double Sx = A1 + B1 + 2.0 * C1 * cos2(t);
        return h * std::pow(S(t), h - 1.0) * Sx;
      },
      spec);
  const auto f2 = integrate_circle_even(
      [=](double t) {
        const double st = S(t);
        const double c = cos2(t);
        const double Sx = A1 + B1 + 2.0 * C1 * c;
        const double Sxx = A2 + B2 + 2.0 * C2 * c;
        return h * std::pow(st, h - 2.0) * ((h - 1.0) * Sx * Sx + st * Sxx);
      },
      spec);
  require_converged(f0, "F");
  require_converged(f1, "F'");
  require_converged(f2, "F''");
  return {f0.value, f1.value, f2.value};
}

double F_via_legendre(double q, double x) {
  require_q(q, "F_via_legendre");
  if (!std::isfinite(x) || x < 0.0 || x >= 0.5)
    throw DomainError("F_via_legendre: needs x in [0, 1/2)");
  if (x == 0.0) return 1.0;
  const double p = hy_endpoint_p(q);
  const double A = std::pow(1.0 - x, 2.0 / p);
  const double B = std::pow(x, 2.0 / p);
  const double z = (A + B) / (A - B);
  return std::pow(A - B, 0.5 * q) * legendre_p(RealDegree{0.5 * q}, z);
}

OdeCoefficients ode_coeffs(double q, double x) {
  require_q(q, "ode_coeffs");
  require_x(x, 0.0, 0.5, true, "ode_coeffs");
  const double p = hy_endpoint_p(q);
  const double y = 1.0 - x;
  const double A = std::pow(y, 2.0 / p);
  const double B = std::pow(x, 2.0 / p);
  OdeCoefficients k;
  k.a = p * p * y * y * x * x * (A - B);
  k.b = p * y * x * (A * (p * (1.0 - 2.0 * x) + 2.0 * q * x) + B * (p * (2.0 * x - 1.0) + 2.0 * q * y));
  k.c = q * A * x * (p * y + q * x) - q * B * y * (p * x + q * y);
  return k;
}

double ode_residual(double q, double x, const QuadratureSpec& spec) {
  const auto k = ode_coeffs(q, x);
  const auto [f0, f1, f2] = F_with_derivatives(q, x, spec);
  const double t2 = k.a * f2, t1 = k.b * f1, t0 = k.c * f0;
  return std::abs(t2 + t1 + t0) / (std::abs(t2) + std::abs(t1) + std::abs(t0) + 1e-300);
}

Report two_point_check(const TwoPointInput& in, double rel_tol) {
  if (!(in.alpha >= 0.0) || !(in.beta >= 0.0) || !std::isfinite(in.alpha) ||
      !std::isfinite(in.beta))
    throw DomainError("two_point_check: alpha and beta must be finite and nonnegative");
  if (!std::isfinite(in.q) || !std::isfinite(in.p))
    throw UsageError("two_point_check: exponents must be finite");
  const ExponentPair pair{Exponent(in.p), Exponent(in.q), Regime::hy_binary};
  if (!in_range(pair))
    throw UsageError("two_point_check: (p, q) lies outside the binary Hausdorff-Young range");

  Report rep;
  rep.suite = "twopoint.two_point";
  rep.inputs = {{"alpha", in.alpha}, {"beta", in.beta}, {"p", in.p}, {"q", in.q}};
  const double m = std::max(in.alpha, in.beta);
  double lhs = 0.0, rhs = 0.0;
  if (m > 0.0) {
    const double a = in.alpha / m, b = in.beta / m;
    const double diff2 = (a - b) * (a - b);
    const double cross = 4.0 * a * b;
    const double hq = 0.5 * in.q;
    const auto est = integrate_circle_even(
        [=](double t) {
          const double c = std::cos(kPi * t);
          return std::pow(diff2 + cross * c * c, hq);
        },
        QuadratureSpec::adaptive(1e-15, 1e-13));
    require_converged(est, "two_point_check");
    lhs = m * std::pow(est.value, 1.0 / in.q);
    rhs = m * std::pow(std::pow(a, in.p) + std::pow(b, in.p), 1.0 / in.p);
  }
  rep.values = {{"lhs", lhs}, {"rhs", rhs}};
  rep.add({"lhs_le_rhs", "two-point inequality", lhs <= rhs * (1.0 + rel_tol), lhs, rhs, rel_tol,
           ""});
  return rep;
}

Report check_F_max(double q, int grid_size, double tol, double equality_tol,
                   std::vector<std::array<double, 2>>* curve) {
  require_q(q, "check_F_max");
  if (grid_size < 101) throw UsageError("check_F_max: grid_size must be >= 101");
  Report rep;
  rep.suite = "twopoint.F_max";
  rep.inputs = {{"q", q}, {"grid_size", grid_size}};

  std::vector<double> xs, fs;
  const int n = grid_size;
  for (int i = 0; i < n; ++i) xs.push_back(static_cast<double>(i) / (n - 1));
  const std::size_t n_uniform = xs.size();
  // Refinement: log-spaced toward 0 and 1, linear around 1/2.
  const double h = 1.0 / (n - 1);
  for (int i = 0; i < 48; ++i) {
    const double r = std::pow(10.0, -9.0 + 9.0 * i / 47.0) * h;
    xs.push_back(r);
    xs.push_back(1.0 - r);
    const double m = h * (i + 1) / 49.0;
    xs.push_back(0.5 - m);
    xs.push_back(0.5 + m);
  }
  fs.reserve(xs.size());
  for (double x : xs) fs.push_back(F(q, x));

  std::size_t arg = 0;
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (fs[i] > fs[arg] || (fs[i] == fs[arg] && xs[i] < xs[arg])) arg = i;
  const double fmax = fs[arg];
  const double xmax = xs[arg];
  const double dist = std::min({std::abs(xmax), std::abs(xmax - 0.5), std::abs(xmax - 1.0)});

  rep.add({"max_le_one", "F_q <= 1", fmax <= 1.0 + tol, fmax, 1.0, tol, "at x=" + fmt(xmax)});
  rep.add({"argmax_at_equality_point", "maxima at 0, 1/2, 1", dist <= 1e-6, dist, 1e-6, 0.0,
           "distance of the maximizer to {0, 1/2, 1}"});
  for (double x0 : {0.0, 0.5, 1.0}) {
    const double dev = std::abs(F(q, x0) - 1.0);
    rep.add({"equality_at_" + fmt(x0), "F_q(0) = F_q(1/2) = 1", dev <= equality_tol, dev, 0.0,
             equality_tol, ""});
  }

  // Interior extrema on the uniform grid over (0, 1/2).
  int local_max = 0, local_min = 0;
  const std::size_t half = (n_uniform - 1) / 2;
  for (std::size_t i = 1; i + 1 <= half && i + 1 < n_uniform; ++i) {
    if (xs[i + 1] >= 0.5) break;
    if (fs[i] > fs[i - 1] && fs[i] > fs[i + 1]) ++local_max;
    if (fs[i] < fs[i - 1] && fs[i] < fs[i + 1]) ++local_min;
  }
  rep.add({"no_interior_local_max", "no local maximum in (0, 1/2)", local_max == 0,
           static_cast<double>(local_max), 0.0, 0.0, "grid evidence only"});
  rep.values = {{"max", fmax}, {"argmax", xmax}, {"interior_local_minima", local_min}};

  if (curve) {
    curve->clear();
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
    for (auto i : order) curve->push_back({xs[i], fs[i]});
  }
  return rep;
}

double richardson(const std::vector<double>& h, const std::vector<double>& f,
                  const std::vector<double>& exponents) {
  const auto m = static_cast<Eigen::Index>(h.size());
  if (h.size() != f.size() || h.size() != exponents.size() + 1)
    throw UsageError("richardson: need one more sample than exponents");
  const double h0 = *std::max_element(h.begin(), h.end());
  Eigen::MatrixXd M(m, m);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    M(i, 0) = 1.0;
    for (Eigen::Index k = 1; k < m; ++k) M(i, k) = std::pow(h[i] / h0, exponents[k - 1]);
    rhs(i) = f[i];
  }
  const Eigen::VectorXd sol = M.colPivHouseholderQr().solve(rhs);
  return sol(0);
}

Report perturbative_check(double q, double eps, double slope_tol, double curvature_tol) {
  require_q(q, "perturbative_check");
  if (!(eps >= 1e-6 && eps <= 1e-3)) throw UsageError("perturbative_check: eps must lie in [1e-6, 1e-3]");
  const double p = hy_endpoint_p(q);
  Report rep;
  rep.suite = "twopoint.perturbative";
  rep.inputs = {{"q", q}, {"eps", eps}};

  // (F(ε) − 1)/ε = −q/p + Σ c ε^{2j/p + m − 1}, (j, m) ≠ (0,0), (0,1); this
  // follows from expanding |u e^{2πit} + v|^q in powers of v/u.
  std::vector<double> ex;
  for (int j = 0; j <= 4; ++j)
    for (int m = 0; m <= 3; ++m) {
      if (j == 0 && m <= 1) continue;
      ex.push_back(2.0 * j / p + m - 1.0);
    }
  std::sort(ex.begin(), ex.end());
  ex.erase(std::unique(ex.begin(), ex.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
           ex.end());
  ex.resize(4);
  std::vector<double> hs, vs;
  for (int i = 0; i <= 4; ++i) {
    const double e = eps * std::pow(2.0, i);
    hs.push_back(e);
    vs.push_back((F(q, e) - 1.0) / e);
  }
  const double slope = richardson(hs, vs, ex);
  const double slope_pred = -q / p;
  const double slope_err = std::abs(slope - slope_pred) / std::abs(slope_pred);
  rep.add({"slope_at_zero", "F_q(eps) = 1 - (q/p) eps + o(eps)", slope_err <= slope_tol, slope,
           slope_pred, slope_tol, "relative error " + fmt(slope_err)});

  // (F(1/2 − ε) − 1)/ε² = K + c ε^{q−1} + d ε² + ...
  const double hc = std::sqrt(eps) / 3.0;
  std::vector<double> cex = {q - 1.0, 2.0};
  if (std::abs(q - 3.0) < 1e-9) cex = {2.0, 3.0};
  std::sort(cex.begin(), cex.end());
  std::vector<double> ch, cv;
  for (int i = 0; i <= 2; ++i) {
    const double e = hc / std::pow(2.0, i);
    ch.push_back(e);
    cv.push_back((F(q, 0.5 - e) - 1.0) / (e * e));
  }
  const double curv = richardson(ch, cv, cex);
  const double curv_pred = -2.0 * q * q * (1.0 - 1.0 / p - 1.0 / q) / (p * (q - 1.0));
  const double curv_err = std::abs(curv - curv_pred) / std::abs(curv_pred);
  rep.add({"curvature_at_half", "F_q(1/2 - eps) = 1 + K eps^2 + o(eps^2)", curv_err <= curvature_tol,
           curv, curv_pred, curvature_tol, "relative error " + fmt(curv_err)});
  rep.add({"curvature_negative", "1 - 1/p - 1/q > 0", curv < 0.0 && curv_pred < 0.0, curv, 0.0, 0.0,
           ""});
  rep.values = {{"p", p}, {"slope", slope}, {"curvature", curv}};
  return rep;
}

double phi_y(double q, double p, double y) {
  const double s = 2.0 / p;
  return p * std::pow(y, s) + q * std::pow(y, s - 1.0) - q * y - p;
}

Report phi_zero_analysis(double q) {
  require_q(q, "phi_zero_analysis");
  const double p = hy_endpoint_p(q);
  Report rep;
  rep.suite = "twopoint.phi_zero";
  rep.inputs = {{"q", q}};

  const auto grid = log_grid(1.0, 1e6, 10000);
  int sign_changes = 0;
  double lo = 0.0, hi = 0.0;
  double prev = phi_y(q, p, grid[1]);
  for (std::size_t i = 2; i < grid.size(); ++i) {
    const double cur = phi_y(q, p, grid[i]);
    if ((prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0)) {
      if (sign_changes == 0) lo = grid[i - 1], hi = grid[i];
      ++sign_changes;
    }
    if (cur != 0.0) prev = cur;
  }
  double root = std::numeric_limits<double>::quiet_NaN();
  if (sign_changes >= 1) {
    const double flo = phi_y(q, p, lo);
    while (hi - lo > 1e-12 * hi) {
      const double mid = 0.5 * (lo + hi);
      const double fm = phi_y(q, p, mid);
      if ((fm < 0.0) == (flo < 0.0)) lo = mid;
      else hi = mid;
    }
    root = 0.5 * (lo + hi);
  }
  rep.add({"exactly_one_zero", "unique zero of phi in (1, inf)", sign_changes == 1,
           static_cast<double>(sign_changes), 1.0, 0.0, "sign changes on the grid"});

  const double at_one = phi_y(q, p, 1.0);
  rep.add({"phi_at_one_zero", "phi(1) = 0", std::abs(at_one) <= 1e-12 * (p + q), at_one, 0.0,
           1e-12 * (p + q), ""});
  const double d1 = 2.0 + q * (2.0 / p - 1.0) - q;
  const double d1_pred = -2.0 * q * (1.0 - 1.0 / p - 1.0 / q);
  rep.add({"phi_prime_at_one_negative", "phi'(1) = -2q(1 - 1/p - 1/q)",
           d1 < 0.0 && std::abs(d1 - d1_pred) <= 1e-12 * q, d1, d1_pred, 1e-12 * q, ""});

  // c_q(1/(y+1)) = q y (y+1)^{−2/p−2} φ(y): compare signs and the identity.
  int sign_mismatch = 0;
  double worst_rel = 0.0;
  for (std::size_t i = 1; i < grid.size(); i += 10) {
    const double y = grid[i];
    if (y > 1e4) break;
    const double ph = phi_y(q, p, y);
    const double c = ode_coeffs(q, 1.0 / (y + 1.0)).c;
    const double pred = q * y * std::pow(y + 1.0, -2.0 / p - 2.0) * ph;
    const double scale = q * y * std::pow(y + 1.0, -2.0 / p - 2.0) *
                         (p * std::pow(y, 2.0 / p) + q * y + p);
    const double rel = std::abs(c - pred) / scale;
    worst_rel = std::max(worst_rel, rel);
    if (std::abs(ph) > 1e-8 * (q * y + p) && (c > 0.0) != (ph > 0.0)) ++sign_mismatch;
  }
  rep.add({"c_q_matches_phi", "c_q and phi under x = 1/(y+1)", sign_mismatch == 0 && worst_rel <= 1e-10,
           worst_rel, 1e-10, 1e-10, std::to_string(sign_mismatch) + " sign mismatches"});
  rep.values = {{"p", p}, {"zero", root}, {"sign_changes", sign_changes},
                {"phi_prime_at_one", d1}, {"y0", q * (1.0 - 1.0 / p)}};
  return rep;
}

double finite_sum_exponent(int k) {
  if (k < 1) throw DomainError("finite_sum_F: k must be >= 1");
  return std::log2(binom_gen(2.0 * k, static_cast<double>(k)));
}

double finite_sum_F(int k, double a, double b) {
  const double r = finite_sum_exponent(k);
  if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("finite_sum_F: a, b must be nonnegative");
  double sum = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double c = binom_gen(k, j);
    const double ea = r / k * (k - j), eb = r / k * j;
    const double ta = ea == 0.0 ? 1.0 : std::pow(a, ea);
    const double tb = eb == 0.0 ? 1.0 : std::pow(b, eb);
    sum += c * c * ta * tb;
  }
  return sum;
}

}  // namespace bincube
