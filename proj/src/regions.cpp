#include "bincube/regions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bincube/errors.hpp"
#include "bincube/specfun.hpp"

namespace bincube {

Exponent::Exponent(double v) : value_(v) {
  if (!std::isfinite(v) || v < 1.0)
    throw DomainError("exponent must be finite and >= 1 (use Exponent::infinity())");
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  e.value_ = std::numeric_limits<double>::infinity();
  return e;
}

double Exponent::value() const {
  if (infinite_) throw DomainError("exponent is infinite");
  return value_;
}

double Exponent::reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

Exponent Exponent::conjugate() const {
  if (infinite_) return Exponent(1.0);
  if (value_ == 1.0) return infinity();
  return Exponent(value_ / (value_ - 1.0));
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::hy_classical: return "hy_classical";
    case Regime::hy_binary: return "hy_binary";
    case Regime::young_classical: return "young_classical";
    case Regime::young_binary: return "young_binary";
  }
  return "unknown";
}

Regime parse_regime(std::string_view name) {
  for (auto r : {Regime::hy_classical, Regime::hy_binary, Regime::young_classical,
                 Regime::young_binary})
    if (to_string(r) == name) return r;
  throw UsageError("unknown regime '" + std::string(name) + "'");
}

double log2_central_binom(double q) {
  return (log_gamma(q + 1.0) - 2.0 * log_gamma(0.5 * q + 1.0)) / std::numbers::ln2;
}

double hy_endpoint_p(double q) {
  if (!std::isfinite(q) || q < 2.0)
    throw DomainError("hy_endpoint_p: endpoint is defined for finite q >= 2");
  return q / log2_central_binom(q);
}

double young_endpoint_p(double q) {
  if (!std::isfinite(q) || q < 1.0)
    throw DomainError("young_endpoint_p: endpoint is defined for finite q >= 1");
  // log₂(2^q + 2) = q + log₂(1 + 2^{1−q})
  return 2.0 * q / (q + std::log1p(std::exp2(1.0 - q)) / std::numbers::ln2);
}

double young_endpoint_gap(double q) {
  if (!std::isfinite(q) || q < 1.0)
    throw DomainError("young_endpoint_gap: endpoint is defined for finite q >= 1");
  const double l = std::log1p(std::exp2(1.0 - q)) / std::numbers::ln2;
  return 2.0 * l / (q + l);
}

namespace {

// w = 2^q / (2^q + 2)
double young_weight(double q) { return 1.0 / (1.0 + std::exp2(1.0 - q)); }

}  // namespace

double young_endpoint_dp(double q) {
  const double p = young_endpoint_p(q);
  return p / q * (1.0 - 0.5 * p * young_weight(q));
}

double young_endpoint_d2p(double q) {
  const double p = young_endpoint_p(q);
  const double dp = young_endpoint_dp(q);
  const double w = young_weight(q);
  const double dw = std::numbers::ln2 * w * (1.0 - w);
  const double g = 1.0 - 0.5 * p * w;
  const double dg = -0.5 * (dp * w + p * dw);
  return (dp * q - p) / (q * q) * g + p / q * dg;
}

double min_inv_p(Regime r, const Exponent& q) {
  const double inv_q = q.reciprocal();
  switch (r) {
    case Regime::hy_classical:
      return inv_q <= 0.5 ? 1.0 - inv_q : 0.5;
    case Regime::hy_binary:
      if (q.is_infinite()) return 1.0;
      return inv_q <= 0.5 ? log2_central_binom(q.value()) * inv_q : 0.5;
    case Regime::young_classical:
      return 0.5 * (1.0 + inv_q);
    case Regime::young_binary:
      if (q.is_infinite()) return 0.5;
      return 1.0 / young_endpoint_p(q.value());
  }
  return 1.0;
}

bool in_range(const ExponentPair& pair) {
  const double need = min_inv_p(pair.regime, pair.q);
  return pair.p.reciprocal() >= need * (1.0 - 1e-14);
}

std::vector<BoundaryPoint> boundary_samples(Regime r, int resolution) {
  if (resolution < 2) throw UsageError("boundary_samples: resolution must be >= 2");
  std::vector<BoundaryPoint> out;
  out.reserve(static_cast<std::size_t>(resolution) + 1);
  auto push = [&](double inv_q) {
    const Exponent q = inv_q > 0.0 ? Exponent(1.0 / inv_q) : Exponent::infinity();
    out.push_back({min_inv_p(r, q), inv_q});
  };
  bool corner_done = false;
  const bool hy = r == Regime::hy_classical || r == Regime::hy_binary;
  for (int i = 0; i < resolution; ++i) {
    const double inv_q = 1.0 - static_cast<double>(i) / (resolution - 1);
    if (hy && !corner_done && inv_q <= 0.5) {
      if (inv_q < 0.5) push(0.5);
      corner_done = true;
    }
    push(inv_q);
  }
  return out;
}

std::string boundary_csv(std::span<const BoundaryPoint> pts) {
  std::ostringstream os;
  os << "inv_p,inv_q\n";
  for (const auto& pt : pts) os << format_double(pt.inv_p) << ',' << format_double(pt.inv_q) << '\n';
  return os.str();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw UsageError("log_grid: need n >= 2, 0 < lo < hi");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

Report section2_report(std::span<const double> q_grid, double margin) {
  Report rep;
  rep.suite = "regions.section2";
  rep.inputs["q_grid_size"] = q_grid.size();
  if (q_grid.empty()) throw UsageError("section2_report: empty grid");
  for (double q : q_grid)
    if (!(q >= 2.0 && q <= 512.0)) throw UsageError("section2_report: grid must lie in [2, 512]");

  const double ln2 = std::numbers::ln2;
  // (a) p decreasing, (b) q ↦ (1/q) log₂ binom increasing
  double worst_dec = std::numeric_limits<double>::infinity();
  double worst_inc = std::numeric_limits<double>::infinity();
  double at_dec = 0.0, at_inc = 0.0;
  for (std::size_t i = 0; i + 1 < q_grid.size(); ++i) {
    const double q0 = q_grid[i], q1 = q_grid[i + 1];
    if (!(q1 > q0)) throw UsageError("section2_report: grid must be strictly increasing");
    const double dp = hy_endpoint_p(q0) - hy_endpoint_p(q1);
    const double dr = log2_central_binom(q1) / q1 - log2_central_binom(q0) / q0;
    if (dp < worst_dec) worst_dec = dp, at_dec = q1;
    if (dr < worst_inc) worst_inc = dr, at_inc = q1;
  }
  if (q_grid.size() > 1) {
    rep.add({"a_p_strictly_decreasing", "endpoint curve monotonicity", worst_dec > margin,
             worst_dec, margin, margin, "smallest drop, at q=" + std::to_string(at_dec)});
    rep.add({"b_rate_strictly_increasing", "endpoint curve monotonicity", worst_inc > margin,
             worst_inc, margin, margin, "smallest rise, at q=" + std::to_string(at_inc)});
  }

  double p_lo = std::numeric_limits<double>::infinity(), p_hi = -p_lo;
  double worst_sub = std::numeric_limits<double>::infinity(), at_sub = 0.0;
  double worst_curv = std::numeric_limits<double>::infinity(), at_curv = 0.0;
  double worst_mult = 0.0;
  double worst_asym = 0.0, at_asym = 0.0;
  double p_at_2 = std::numeric_limits<double>::quiet_NaN();
  for (double q : q_grid) {
    const double p = hy_endpoint_p(q);
    p_lo = std::min(p_lo, p);
    p_hi = std::max(p_hi, p);
    if (q == 2.0) {
      p_at_2 = p;
    } else {
      // (c) 1/p + 1/q < 1 away from q = 2
      const double gap = 1.0 - 1.0 / p - 1.0 / q;
      if (gap < worst_sub) worst_sub = gap, at_sub = q;
    }
    // (d) second derivative of log₂Γ(t+1) − 2log₂Γ(t/2+1)
    const double curv = (trigamma(0.5 * q + 0.5) - trigamma(0.5 * q + 1.0)) / (4.0 * ln2);
    const double direct = trigamma(q + 1.0) / ln2 - trigamma(0.5 * q + 1.0) / (2.0 * ln2);
    if (curv < worst_curv) worst_curv = curv, at_curv = q;
    worst_mult = std::max(worst_mult, std::abs(curv - direct) / std::abs(direct));
    // (e) φ(t) = t − 1 − log₂ binom(t, t/2) stays within O(1) of (1/2) log₂ t
    const double dev = std::abs(q - 1.0 - log2_central_binom(q) - 0.5 * std::log2(q));
    if (dev > worst_asym) worst_asym = dev, at_asym = q;
  }
  rep.add({"p_in_(1,2]", "endpoint range", p_lo > 1.0 && p_hi <= 2.0 + 1e-12, p_lo, 1.0, 0.0,
           "max p = " + std::to_string(p_hi)});
  if (std::isfinite(worst_sub))
    rep.add({"c_sub_holder_strict", "sub-Hoelder condition", worst_sub > margin, worst_sub, margin,
             margin, "smallest 1 - 1/p - 1/q, at q=" + std::to_string(at_sub)});
  if (!std::isnan(p_at_2)) {
    const double eq = std::abs(1.0 / p_at_2 + 0.5 - 1.0);
    rep.add({"c_sub_holder_equality_at_2", "sub-Hoelder condition", eq <= 1e-12, eq, 1e-12, 1e-12,
             "1/p + 1/q = 1 at the endpoint q = 2"});
  }
  rep.add({"d_curvature_positive", "trigamma expression", worst_curv > margin, worst_curv, margin,
           margin, "smallest value, at q=" + std::to_string(at_curv)});
  rep.add({"d_multiplication_theorem", "trigamma duplication", worst_mult <= 1e-10, worst_mult,
           1e-10, 1e-10, "relative gap between the two trigamma forms"});
  rep.add({"e_log_growth_bounded", "Stirling asymptotics", worst_asym <= 1.0, worst_asym, 1.0,
           0.0, "largest deviation, at q=" + std::to_string(at_asym)});
  rep.values["p_min"] = p_lo;
  rep.values["p_max"] = p_hi;
  return rep;
}

}  // namespace bincube
