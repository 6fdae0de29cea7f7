#include "bincube/cube.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "bincube/regions.hpp"
#include "bincube/specfun.hpp"

namespace bincube {
namespace {

using cd = std::complex<double>;
using boost::multiprecision::cpp_int;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Σ bit_j(x) r^j: the carry-free embedding of {0,1}^d into radix r.
std::vector<std::uint64_t> spread_table(int d, std::uint64_t radix) {
  std::vector<std::uint64_t> t(std::size_t{1} << d);
  std::vector<std::uint64_t> pw(static_cast<std::size_t>(d));
  std::uint64_t w = 1;
  for (int j = 0; j < d; ++j, w *= radix) pw[j] = w;
  for (std::size_t x = 1; x < t.size(); ++x) {
    const int j = std::countr_zero(x);
    t[x] = t[x & (x - 1)] + pw[j];
  }
  return t;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// f̂(ξ) with caller-provided scratch of size 2^d.
cd fold_eval(const cd* values, int d, const double* xi, std::vector<cd>& scratch) {
  scratch.assign(values, values + (std::size_t{1} << d));
  for (int j = d - 1; j >= 0; --j) {
    const std::size_t half = std::size_t{1} << j;
    const cd w = std::polar(1.0, -kTwoPi * xi[j]);
    for (std::size_t x = 0; x < half; ++x) scratch[x] += w * scratch[x + half];
  }
  return scratch[0];
}

bool is_even_integer(double q) { return q >= 2.0 && q == std::floor(q) && std::fmod(q, 2.0) == 0.0; }

// Mean of |f̂|^{2k} over the (k+1)^d grid of roots of unity. |f̂|^{2k} = |f̂^k|²
// and f̂^k has frequencies in {0..k}^d, so the average equals the integral.
double even_power_mean(const CubeFunction& f, int k) {
  const int d = f.dim();
  const std::size_t n = static_cast<std::size_t>(k) + 1;
  std::vector<cd> w(n);
  for (std::size_t m = 0; m < n; ++m) w[m] = std::polar(1.0, -kTwoPi * static_cast<double>(m) / static_cast<double>(n));
  std::vector<cd> cur(f.values().data(), f.values().data() + f.size()), nxt;
  std::size_t low = 1;
  for (int j = 0; j < d; ++j) {
    const std::size_t high = std::size_t{1} << (d - j - 1);
    nxt.assign(low * n * high, cd{});
    for (std::size_t h = 0; h < high; ++h)
      for (std::size_t l = 0; l < low; ++l) {
        const cd a = cur[l + low * (2 * h)], b = cur[l + low * (2 * h + 1)];
        for (std::size_t m = 0; m < n; ++m) nxt[l + low * (m + n * h)] = a + b * w[m];
      }
    cur.swap(nxt);
    low *= n;
  }
  std::vector<double> terms(cur.size());
  for (std::size_t i = 0; i < cur.size(); ++i) terms[i] = std::pow(std::norm(cur[i]), k);
  return pairwise_sum(terms) / static_cast<double>(cur.size());
}

// ∫₀¹ |a + b e^{2πit}|^s dt for a, b ≥ 0. With r = min/max the integral is
// max^s Σⱼ binom(s/2, j)² r^{2j}; the series is used for r ≤ 0.6 and the
// form ((a − b)² + 4ab cos²(πt))^{s/2} is integrated otherwise.
IntegralEstimate circle_power_mean(double a, double b, double s) {
  IntegralEstimate out;
  const double hi = std::max(a, b), lo = std::min(a, b);
  if (hi == 0.0) return out;
  const double r = lo / hi;
  const double scale = std::pow(hi, s);
  if (r <= 0.6) {
    const double r2 = r * r;
    double c = 1.0, pw = 1.0, sum = 1.0, term = 1.0;
    int j = 0;
    // Past j > s/2 + 1 the coefficients shrink, so the tail is below
    // term · r²/(1 − r²).
    while (true) {
      c *= (s / 2.0 - j) / (j + 1.0);
      pw *= r2;
      ++j;
      term = c * c * pw;
      sum += term;
      if (j > s / 2.0 + 1.0 && term * r2 / (1.0 - r2) <= 1e-17 * sum) break;
    }
    out.value = scale * sum;
    out.error_bound = scale * (term * r2 / (1.0 - r2) + 4e-16 * j * sum);
    out.evaluations = j;
    return out;
  }
  const double gap = (1.0 - r) * (1.0 - r), cross = 4.0 * r;
  auto g = [=](double t) {
    const double c = std::cos(std::numbers::pi * t);
    return std::pow(gap + cross * c * c, s / 2.0);
  };
  auto est = integrate_circle_even(g, QuadratureSpec::adaptive(1e-300, 1e-14));
  require_converged(est, "circle_power_mean");
  est.value *= scale;
  est.error_bound *= scale;
  return est;
}

// ∫_{T^d} |f̂|^s with the quadrature named by spec.
IntegralEstimate integrate_hat_power(const CubeFunction& f, double s, const QuadratureSpec& spec) {
  const int d = f.dim();
  const cd* vals = f.values().data();
  if (spec.method == QuadratureMethod::adaptive1d) {
    if (d != 1) throw UsageError("adaptive1d quadrature needs d = 1; use tensor (d <= 3) or qmc (d <= 10)");
    auto g = [&](double t) {
      const cd v = vals[0] + std::polar(1.0, -kTwoPi * t) * vals[1];
      return std::pow(std::abs(v), s);
    };
    return integrate_circle(g, spec);
  }
  // f̂(ξ', ξ_d) = A(ξ') + e^{−2πiξ_d} B(ξ') with A, B the transforms of the two
  // slices, so the last coordinate integrates in one dimension and the outer
  // integrand on T^{d−1} no longer has the kinks of |f̂|^s along its zero set.
  if (spec.method == QuadratureMethod::tensor && d > 3)
    throw UsageError("tensor quadrature needs d <= 3; use qmc (d <= 10)");
  if (spec.method == QuadratureMethod::qmc && d > 10) throw UsageError("qmc quadrature needs d <= 10");
  if (d == 1) {
    auto one = circle_power_mean(std::abs(vals[0]), std::abs(vals[1]), s);
    one.method_used = spec.method;
    return one;
  }
  const std::size_t half = std::size_t{1} << (d - 1);
  double inner_err = 0.0;
  std::int64_t inner_evals = 0;
  auto g = [&](std::span<const double> xi) {
    thread_local std::vector<cd> scratch;
    const double a = std::abs(fold_eval(vals, d - 1, xi.data(), scratch));
    const double b = std::abs(fold_eval(vals + half, d - 1, xi.data(), scratch));
    const auto m = circle_power_mean(a, b, s);
    inner_err = std::max(inner_err, m.error_bound);
    inner_evals += m.evaluations;
    return m.value;
  };
  auto est = integrate_torus(g, d - 1, spec);
  est.error_bound += inner_err;
  est.evaluations += inner_evals;
  return est;
}

void require_nonneg(const RealCubeFunction& f, const char* who) {
  if ((f.values().array() < 0.0).any()) throw DomainError(std::string(who) + ": values must be nonnegative");
}

}  // namespace

CubeFunction complexify(const RealCubeFunction& f) {
  return CubeFunction(f.dim(), f.values().cast<cd>());
}

CubeSet::CubeSet(int d, std::vector<std::uint32_t> members) : d_(d), members_(std::move(members)) {
  if (d < 1 || d > kMaxCubeDim) throw DomainError("cube dimension must lie in [1, 20]");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= (std::uint32_t{1} << d))
    throw DomainError("cube set member outside {0,1}^d");
}

CubeSet CubeSet::full(int d) {
  if (d < 1 || d > kMaxCubeDim) throw DomainError("cube dimension must lie in [1, 20]");
  std::vector<std::uint32_t> m(std::size_t{1} << d);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint32_t>(i);
  return CubeSet(d, std::move(m));
}

RealCubeFunction indicator(const CubeSet& a) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(Eigen::Index{1} << a.dim());
  for (auto x : a.members()) v(x) = 1.0;
  return RealCubeFunction(a.dim(), std::move(v));
}

CubeSet parse_cube_set(std::string_view text, int d) {
  std::vector<std::uint32_t> members;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string s = line.substr(b, e - b + 1);
    if (d == 0) d = static_cast<int>(s.size());
    if (static_cast<int>(s.size()) != d)
      throw UsageError("cube set line " + std::to_string(lineno) + ": expected " + std::to_string(d) + " digits");
    if (d > kMaxCubeDim) throw UsageError("cube set dimension exceeds 20");
    std::uint32_t x = 0;
    for (char c : s) {
      if (c != '0' && c != '1')
        throw UsageError("cube set line " + std::to_string(lineno) + ": only 0 and 1 allowed");
      x = (x << 1) | static_cast<std::uint32_t>(c - '0');
    }
    members.push_back(x);
  }
  if (d == 0) throw UsageError("cube set is empty and no dimension was given");
  return CubeSet(d, std::move(members));
}

std::string format_cube_set(const CubeSet& a) {
  std::string out;
  for (auto x : a.members()) {
    for (int j = a.dim() - 1; j >= 0; --j) out += ((x >> j) & 1U) ? '1' : '0';
    out += '\n';
  }
  return out;
}

CubeFunction random_cube_function(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXcd v(Eigen::Index{1} << d);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = unit(rng);
    v(i) = std::polar(r, kTwoPi * unit(rng));
  }
  return CubeFunction(d, std::move(v));
}

RealCubeFunction random_nonneg_function(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd v(Eigen::Index{1} << d);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = unit(rng);
  return RealCubeFunction(d, std::move(v));
}

CubeSet random_cube_set(int d, double density, std::mt19937_64& rng) {
  if (!(density >= 0.0 && density <= 1.0)) throw UsageError("random_cube_set: density must lie in [0, 1]");
  std::bernoulli_distribution keep(density);
  std::vector<std::uint32_t> m;
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << d); ++x)
    if (keep(rng)) m.push_back(x);
  return CubeSet(d, std::move(m));
}

std::complex<double> fourier_eval(const CubeFunction& f, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != f.dim()) throw UsageError("fourier_eval: xi must have d coordinates");
  std::vector<cd> scratch;
  return fold_eval(f.values().data(), f.dim(), xi.data(), scratch);
}

double lp_norm(const Eigen::VectorXd& magnitudes, double p) {
  const double m = magnitudes.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  std::vector<double> terms(static_cast<std::size_t>(magnitudes.size()));
  for (Eigen::Index i = 0; i < magnitudes.size(); ++i) terms[i] = std::pow(std::abs(magnitudes(i)) / m, p);
  return m * std::pow(pairwise_sum(terms), 1.0 / p);
}

IntegralEstimate lq_hat_norm(const CubeFunction& f, double q, const QuadratureSpec& spec) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw UsageError("lq_hat_norm: needs finite q >= 1");
  IntegralEstimate out;
  if (q == 2.0) {
    out.value = lp_norm(f.values().cwiseAbs(), 2.0);
    out.error_bound = 1e-15 * out.value;
    return out;
  }
  if (is_even_integer(q)) {
    const int k = static_cast<int>(q / 2.0);
    const double cells = std::pow(static_cast<double>(k + 1), f.dim());
    if (cells <= static_cast<double>(1 << 22)) {
      const double mean = even_power_mean(f, k);
      out.value = std::pow(mean, 1.0 / q);
      out.error_bound = 1e-14 * out.value;
      out.evaluations = static_cast<std::int64_t>(cells);
      return out;
    }
  }
  auto est = integrate_hat_power(f, q, spec);
  require_converged(est, "lq_hat_norm");
  out = est;
  out.value = std::pow(est.value, 1.0 / q);
  // d(I^{1/q}) = (1/q) I^{1/q − 1} dI
  out.error_bound = est.value > 0.0 ? out.value * est.error_bound / (q * est.value)
                                    : std::pow(est.error_bound, 1.0 / q);
  return out;
}

Report hy_ratio(const CubeFunction& f, double p, double q, const QuadratureSpec& spec) {
  if (!in_range({Exponent(p), Exponent(q), Regime::hy_binary}))
    throw UsageError("hy_ratio: (p, q) lies outside the binary Hausdorff-Young range");
  const double lp = lp_norm(f.values().cwiseAbs(), p);
  if (lp == 0.0) throw UsageError("hy_ratio: f must not vanish identically");
  const auto hat = lq_hat_norm(f, q, spec);
  const double ratio = hat.value / lp;
  const double err = hat.error_bound / lp;
  const double tol = std::max(1e-9, 3.0 * err);
  Report rep;
  rep.suite = "cube.hy_ratio";
  rep.inputs = {{"d", f.dim()}, {"p", p}, {"q", q}, {"method", std::string(to_string(hat.method_used))}};
  rep.values = {{"hat_norm", hat.value}, {"lp_norm", lp}, {"ratio", ratio}, {"error_bound", err},
                {"statistical", hat.statistical}};
  rep.add({"ratio_le_one", "binary Hausdorff-Young", ratio <= 1.0 + tol, ratio, 1.0, tol, ""});
  return rep;
}

LatticeFunction convolve(const RealCubeFunction& f, const RealCubeFunction& g) {
  if (f.dim() != g.dim()) throw UsageError("convolve: dimension mismatch");
  if (f.dim() > kMaxConvolutionDim) throw UsageError("convolve: d must be <= 12");
  require_nonneg(f, "convolve");
  require_nonneg(g, "convolve");
  const int d = f.dim();
  const auto sp = spread_table(d, 3);
  LatticeFunction h{d, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ipow(3, d)))};
  std::vector<std::uint32_t> gs;
  for (std::uint32_t y = 0; y < g.size(); ++y)
    if (g(y) != 0.0) gs.push_back(y);
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    const double fx = f(x);
    if (fx == 0.0) continue;
    for (auto y : gs) h.values(static_cast<Eigen::Index>(sp[x] + sp[y])) += fx * g(y);
  }
  return h;
}

Report young_ratio(const RealCubeFunction& f, const RealCubeFunction& g, double p, double q, double tol) {
  if (!in_range({Exponent(p), Exponent(q), Regime::young_binary}))
    throw UsageError("young_ratio: (p, q) lies outside the binary Young range");
  const auto h = convolve(f, g);
  const double nf = lp_norm(f.values(), p), ng = lp_norm(g.values(), p);
  if (nf == 0.0 || ng == 0.0) throw UsageError("young_ratio: f and g must not vanish identically");
  const double nh = lp_norm(h.values, q);
  const double ratio = nh / (nf * ng);
  Report rep;
  rep.suite = "cube.young_ratio";
  rep.inputs = {{"d", f.dim()}, {"p", p}, {"q", q}};
  rep.values = {{"conv_norm", nh}, {"f_norm", nf}, {"g_norm", ng}, {"ratio", ratio}};
  rep.add({"ratio_le_one", "binary Young", ratio <= 1.0 + tol, ratio, 1.0, tol, ""});
  return rep;
}

cpp_int energy_E_exact(const CubeSet& a, int kappa) {
  if (kappa < 1) throw UsageError("energy_E_exact: kappa must be a positive integer");
  const int d = a.dim();
  const std::size_t n = a.size();
  if (n == 0) return 0;
  if (kappa * std::log2(static_cast<double>(n)) >= 63.0)
    throw UsageError("energy_E_exact: |A|^kappa does not fit in 64 bits");
  const std::uint64_t radix = static_cast<std::uint64_t>(kappa) + 1;
  const double cells = std::pow(static_cast<double>(radix), d);
  if (cells > static_cast<double>(1 << 23))
    throw UsageError("energy_E_exact: (kappa+1)^d exceeds 2^23 cells");
  const auto sp = spread_table(d, radix);
  std::vector<std::uint64_t> r(static_cast<std::size_t>(cells), 0), next;
  std::vector<std::uint64_t> support;
  for (auto x : a.members()) {
    r[sp[x]] = 1;
    support.push_back(sp[x]);
  }
  double ops = 0.0;
  for (int step = 1; step < kappa; ++step) {
    ops += static_cast<double>(support.size()) * static_cast<double>(n);
    if (ops > 2147483648.0) throw UsageError("energy_E_exact: convolution exceeds 2^31 operations");
    next.assign(r.size(), 0);
    for (auto z : support)
      for (auto x : a.members()) next[z + sp[x]] += r[z];
    r.swap(next);
    support.clear();
    for (std::size_t z = 0; z < r.size(); ++z)
      if (r[z]) support.push_back(z);
  }
  cpp_int sum = 0;
  for (auto z : support) sum += cpp_int(r[z]) * r[z];
  return sum;
}

IntegralEstimate energy_E(const CubeSet& a, double kappa, const QuadratureSpec& spec) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw UsageError("energy_E: needs finite kappa >= 1");
  IntegralEstimate out;
  if (a.size() == 0) return out;
  if (kappa == std::floor(kappa)) {
    out.value = static_cast<double>(energy_E_exact(a, static_cast<int>(kappa)));
    return out;
  }
  auto est = integrate_hat_power(complexify(indicator(a)), 2.0 * kappa, spec);
  require_converged(est, "energy_E");
  return est;
}

double energy_E_tilde(const CubeSet& a, double kappa) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw UsageError("energy_E_tilde: needs finite kappa >= 1");
  const int d = a.dim();
  if (d > kMaxConvolutionDim) throw UsageError("energy_E_tilde: d must be <= 12");
  if (a.size() == 0) return 0.0;
  const auto sp = spread_table(d, 3);
  const std::uint64_t offset = sp.back();  // Σ 3^j shifts digits from {−1,0,1} to {0,1,2}
  std::vector<std::uint32_t> c(static_cast<std::size_t>(ipow(3, d)), 0);
  for (auto x : a.members())
    for (auto y : a.members()) ++c[sp[x] + offset - sp[y]];
  std::vector<double> terms;
  for (auto v : c)
    if (v) terms.push_back(std::pow(static_cast<double>(v), kappa));
  return pairwise_sum(terms);
}

Report energy_bounds_check(const CubeSet& a, double kappa, const QuadratureSpec& spec, double tol) {
  const double n = static_cast<double>(a.size());
  const double r = std::log2(binom_gen(2.0 * kappa, kappa));
  const double rt = std::log2(std::exp2(kappa) + 2.0);
  const auto e = energy_E(a, kappa, spec);
  const double et = energy_E_tilde(a, kappa);
  const double be = n > 0 ? std::pow(n, r) : 0.0;
  const double bt = n > 0 ? std::pow(n, rt) : 0.0;
  Report rep;
  rep.suite = "cube.energy_bounds";
  rep.inputs = {{"d", a.dim()}, {"size", a.size()}, {"kappa", kappa}};
  rep.values = {{"E", e.value},          {"E_error_bound", e.error_bound}, {"E_bound", be},
                {"E_tilde", et},         {"E_tilde_bound", bt},          {"r", r},
                {"r_tilde", rt},         {"E_exact", e.error_bound == 0.0}};
  rep.add({"E_le_bound", "E_kappa(A) <= |A|^r", e.value - e.error_bound <= be * (1.0 + tol), e.value, be,
           tol, "error bound " + fmt(e.error_bound)});
  rep.add({"E_tilde_le_bound", "E~_kappa(A) <= |A|^r~", et <= bt * (1.0 + tol), et, bt, tol, ""});
  return rep;
}

Report induction_step_check(const CubeFunction& f, double p, double q, const QuadratureSpec& spec) {
  const int d = f.dim();
  if (d < 2 || d > 3) throw UsageError("induction_step_check: needs 2 <= d <= 3");
  if (!in_range({Exponent(p), Exponent(q), Regime::hy_binary}))
    throw UsageError("induction_step_check: (p, q) lies outside the binary Hausdorff-Young range");
  const Eigen::Index half = Eigen::Index{1} << (d - 1);
  const CubeFunction f0(d - 1, f.values().head(half)), f1(d - 1, f.values().tail(half));
  const auto n = lq_hat_norm(f, q, spec);
  const auto n0 = lq_hat_norm(f0, q, spec), n1 = lq_hat_norm(f1, q, spec);
  const double l0 = lp_norm(f0.values().cwiseAbs(), p), l1 = lp_norm(f1.values().cwiseAbs(), p);
  const double l = lp_norm(f.values().cwiseAbs(), p);
  const double mid = std::pow(std::pow(n0.value, p) + std::pow(n1.value, p), 1.0 / p);
  const double right = std::pow(std::pow(l0, p) + std::pow(l1, p), 1.0 / p);
  const double scale = std::max(l, 1e-300);
  const double err = (n.error_bound + n0.error_bound + n1.error_bound) / scale;
  const double tol = std::max(1e-9, 3.0 * err);
  Report rep;
  rep.suite = "cube.induction_step";
  rep.inputs = {{"d", d}, {"p", p}, {"q", q}};
  rep.values = {{"hat_norm", n.value}, {"minkowski", mid}, {"slices", right}, {"lp_norm", l}};
  rep.add({"two_point_and_minkowski", "first step of the induction", n.value <= mid + tol * scale, n.value, mid,
           tol, ""});
  rep.add({"induction_hypothesis", "second step of the induction", mid <= right + tol * scale, mid, right, tol,
           ""});
  const double split = std::abs(right - l) / scale;
  rep.add({"slices_recombine", "l^p norm splits over slices", split <= 1e-12, split, 0.0, 1e-12, ""});
  return rep;
}

double l4_ratio_1d(std::span<const double> v, double p) {
  const std::size_t n = v.size();
  double m = 0.0;
  for (double x : v) {
    if (x < 0.0) throw DomainError("l4_ratio_1d: entries must be nonnegative");
    m = std::max(m, x);
  }
  if (m == 0.0) throw DomainError("l4_ratio_1d: vector must not vanish");
  double num = 0.0;
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (k >= i && k - i < n) c += (v[i] / m) * (v[k - i] / m);
    num += c * c;
  }
  double den = 0.0;
  for (double x : v) den += std::pow(x / m, p);
  return num / std::pow(den, 4.0 / p);
}

namespace {

// Coordinate ascent from one start; returns the final value.
double ascend(std::vector<double>& v, double p) {
  const int n = static_cast<int>(v.size());
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double value = l4_ratio_1d(v, p);
  for (int sweep = 0; sweep < 2000; ++sweep) {
    const double before = value;
    for (int i = 0; i < n; ++i) {
      auto at = [&](double t) {
        const double keep = v[i];
        v[i] = t;
        double r;
        try {
          r = l4_ratio_1d(v, p);
        } catch (const DomainError&) {
          r = -1.0;
        }
        v[i] = keep;
        return r;
      };
      // Coarse scan on [0, 2] first, golden section in the best cell.
      const int cells = 32;
      int best = 0;
      double bv = -1.0;
      for (int c = 0; c <= cells; ++c) {
        const double r = at(2.0 * c / cells);
        if (r > bv) bv = r, best = c;
      }
      double lo = 2.0 * std::max(best - 1, 0) / cells, hi = 2.0 * std::min(best + 1, cells) / cells;
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      double f1 = at(x1), f2 = at(x2);
      while (hi - lo > 1e-13) {
        if (f1 < f2) lo = x1, x1 = x2, f1 = f2, x2 = lo + gr * (hi - lo), f2 = at(x2);
        else hi = x2, x2 = x1, f2 = f1, x1 = hi - gr * (hi - lo), f1 = at(x1);
      }
      double t = 0.5 * (lo + hi), ft = at(t);
      const double cur = at(v[i]);
      if (bv > ft) t = 2.0 * best / cells, ft = bv;
      if (ft > cur) v[i] = t;
      const double mx = *std::max_element(v.begin(), v.end());
      for (double& x : v) x /= mx;
    }
    value = l4_ratio_1d(v, p);
    if (std::abs(value - before) <= 1e-16 * std::abs(value) && sweep > 2) break;
  }
  return value;
}

bool is_vertex(const std::vector<double>& v) {
  int big = 0;
  for (double x : v)
    if (x > 1e-6) ++big;
  return big < 2;
}

struct InnerMax {
  double value = -1.0;  // −1 when every start ended at a point mass
  std::vector<double> argmax;
  int agreeing = 0;
};

InnerMax inner_max(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<std::pair<double, std::vector<double>>> found;
  for (int s = 0; s < 32; ++s) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = unit(rng);
    const double val = ascend(v, p);
    if (!is_vertex(v)) found.emplace_back(val, v);
  }
  InnerMax out;
  for (const auto& [val, v] : found)
    if (val > out.value) out.value = val, out.argmax = v;
  for (const auto& [val, v] : found)
    if (std::abs(val - out.value) <= 1e-11) ++out.agreeing;
  return out;
}

}  // namespace

std::vector<double> maximize_l4_ratio(int n, double p, std::uint64_t seed, double* best_value) {
  if (n < 2 || n > 8) throw UsageError("maximize_l4_ratio: n must lie in [2, 8]");
  const auto m = inner_max(n, p, seed);
  if (best_value) *best_value = m.value;
  return m.argmax;
}

OptimalExponent optimal_l4_exponent(int n, double tol, double lo, double hi, std::uint64_t seed) {
  if (n < 2 || n > 8) throw UsageError("optimal_l4_exponent: n must lie in [2, 8]");
  if (!(tol >= 1e-12) || !(hi > lo) || !(lo > 1.0)) throw UsageError("optimal_l4_exponent: bad window or tolerance");
  auto trial = [&](double p) {
    const auto m = inner_max(n, p, seed);
    if (m.value > 0.0 && m.agreeing < 2)
      throw NumericalFailure("optimal_l4_exponent: best local maximum found by one start only at p=" + fmt(p),
                             p);
    return m;
  };
  if (!(trial(lo).value <= 1.0) || !(trial(hi).value > 1.0))
    throw NumericalFailure("optimal_l4_exponent: window does not bracket the exponent", 0.5 * (lo + hi));
  OptimalExponent out;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (trial(mid).value > 1.0) hi = mid;
    else lo = mid;
    ++out.bisection_steps;
  }
  out.p = 0.5 * (lo + hi);
  const auto m = trial(out.p);
  out.max_ratio = m.value;
  out.argmax = m.argmax;
  return out;
}

OptimalExponent triadic_optimal_p(double tol) { return optimal_l4_exponent(3, tol); }

}  // namespace bincube
