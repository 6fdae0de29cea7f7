#include "bincube/certify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "bincube/errors.hpp"
#include "bincube/fourpoint.hpp"
#include "bincube/regions.hpp"
#include "bincube/twopoint.hpp"

namespace bincube {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_domain(double q, double u, const char* who) {
  if (!(q >= 1.0 && q <= 4.0) || !(u >= 0.0) || !std::isfinite(u))
    throw DomainError(std::string(who) + ": needs q in [1, 4] and finite u >= 0");
}

double sech2(double x) {
  const double c = std::cosh(x);
  return std::isfinite(c) ? 1.0 / (c * c) : 0.0;
}

// ∂_qΦ̃ with p, p′ already evaluated for this q.
double dq_phi_tilde_at(double q, double p, double dp, double u) {
  const double eta = log_cosh(u) - dp * u * std::tanh(p * u);
  return eta + 2.0 / (2.0 * q - p) * (dp * q / p - 1.0) + kLn2;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Node count along one side; the step has to divide the side.
std::int64_t node_count(double lo, double hi, double step, const char* axis) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi >= lo))
    throw UsageError(std::string("certify_grid: bad ") + axis + " interval");
  if (!(step > 0.0) || !std::isfinite(step))
    throw UsageError(std::string("certify_grid: ") + axis + " step must be positive");
  const double span = hi - lo;
  const double n = std::round(span / step);
  if (std::abs(n * step - span) > 1e-9 * std::max(span, step))
    throw UsageError(std::string("certify_grid: ") + axis + " step does not divide the interval");
  if (n > 1e8) throw UsageError("certify_grid: too many nodes");
  return static_cast<std::int64_t>(n);
}

}  // namespace

double phi_tilde(double q, double u) {
  require_domain(q, u, "phi_tilde");
  const double p = young_endpoint_p(q);
  return q * log_cosh(u) - log_cosh(p * u) + std::log(p * std::exp2(q - 1.0) / (2.0 * q - p));
}

double dq_phi_tilde(double q, double u) {
  require_domain(q, u, "dq_phi_tilde");
  return dq_phi_tilde_at(q, young_endpoint_p(q), young_endpoint_dp(q), u);
}

double dqq_phi_tilde(double q, double u) {
  require_domain(q, u, "dqq_phi_tilde");
  const double p = young_endpoint_p(q);
  const double d1 = young_endpoint_dp(q), d2 = young_endpoint_d2p(q);
  const double r = 2.0 * q - p;
  return -d2 * u * std::tanh(p * u) - d1 * d1 * u * u * sech2(p * u) + d2 * 2.0 * q / (p * r) -
         d1 * d1 * 4.0 * q * (q - p) / (p * p * r * r) + 4.0 / (r * r) * (1.0 - d1);
}

double duq_phi_tilde(double q, double u) {
  require_domain(q, u, "duq_phi_tilde");
  const double p = young_endpoint_p(q);
  const double d1 = young_endpoint_dp(q);
  return -d1 * std::tanh(p * u) - d1 * p * u * sech2(p * u) + std::tanh(u);
}

std::string_view to_string(CertFunction f) {
  switch (f) {
    case CertFunction::dq_phi_tilde: return "dq_phi_tilde";
    case CertFunction::constant_one: return "constant_one";
    case CertFunction::f_defect: return "f_defect";
    case CertFunction::g_defect: return "g_defect";
  }
  return "unknown";
}

CertFunction parse_cert_function(std::string_view name) {
  for (auto f : {CertFunction::dq_phi_tilde, CertFunction::constant_one, CertFunction::f_defect,
                 CertFunction::g_defect})
    if (to_string(f) == name) return f;
  throw UsageError("unknown certificate function '" + std::string(name) + "'");
}

CertRequest paper_certificate_request() {
  CertRequest r;
  r.function = CertFunction::dq_phi_tilde;
  r.rectangle = {1.0, 4.0, 0.0, 3.0};
  r.steps = {1.0 / 700.0, 1.0 / 300.0};
  r.lipschitz = std::array<double, 2>{7.0, 3.0};
  r.threshold = 1.0 / 50.0;
  r.target = 0.0;
  r.pad = 1e-6;
  return r;
}

GridCertificate certify_grid(const CertRequest& req) {
  const auto [q_lo, q_hi, u_lo, u_hi] = req.rectangle;
  const std::int64_t nq = node_count(q_lo, q_hi, req.steps[0], "q");
  const std::int64_t nu = node_count(u_lo, u_hi, req.steps[1], "u");
  if (!(req.pad >= 0.0) || !std::isfinite(req.threshold) || !std::isfinite(req.target))
    throw UsageError("certify_grid: pad must be >= 0 and thresholds finite");
  if (req.lipschitz && !((*req.lipschitz)[0] >= 0.0 && (*req.lipschitz)[1] >= 0.0))
    throw UsageError("certify_grid: Lipschitz constants must be >= 0");
  if ((nq + 1) * (nu + 1) > 50'000'000) throw UsageError("certify_grid: too many nodes");

  const bool rigorous_fn =
      req.function == CertFunction::dq_phi_tilde || req.function == CertFunction::constant_one;
  switch (req.function) {
    case CertFunction::dq_phi_tilde:
      if (q_lo < 1.0 || q_hi > 4.0 || u_lo < 0.0)
        throw UsageError("certify_grid: dq_phi_tilde needs a rectangle inside [1,4] x [0,inf)");
      break;
    case CertFunction::f_defect:
      if (q_lo <= 2.0 || u_lo < 0.0 || u_hi > 1.0)
        throw UsageError("certify_grid: f_defect needs q > 2 and x in [0, 1]");
      break;
    case CertFunction::g_defect:
      if (!(req.param > 1.0) || u_lo < 0.0 || u_hi > 1.0 || q_lo < 0.0 || q_hi > 1.0)
        throw UsageError("certify_grid: g_defect needs param q > 1 and (x, y) in [0,1]^2");
      break;
    case CertFunction::constant_one: break;
  }

  auto node = [](double lo, double hi, std::int64_t n, std::int64_t i) {
    return n == 0 ? lo : (i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
  };

  GridCertificate c;
  c.function_id = std::string(to_string(req.function));
  c.rectangle = req.rectangle;
  c.steps = req.steps;
  c.node_threshold = req.threshold;
  c.target = req.target;
  c.eval_error_bound = req.pad;
  c.worst_node.value = std::numeric_limits<double>::infinity();

  // Needed only when Lipschitz constants are estimated.
  const bool estimate = !req.lipschitz.has_value();
  std::vector<double> prev_row, row(static_cast<std::size_t>(nu + 1));
  double est_q = 0.0, est_u = 0.0;

  for (std::int64_t i = 0; i <= nq; ++i) {
    const double q = node(q_lo, q_hi, nq, i);
    double p = 0.0, dp = 0.0;
    if (req.function == CertFunction::dq_phi_tilde) {
      p = young_endpoint_p(q);
      dp = young_endpoint_dp(q);
    }
    for (std::int64_t j = 0; j <= nu; ++j) {
      const double u = node(u_lo, u_hi, nu, j);
      double v = 0.0;
      switch (req.function) {
        case CertFunction::dq_phi_tilde: v = dq_phi_tilde_at(q, p, dp, u); break;
        case CertFunction::constant_one: v = 1.0; break;
        case CertFunction::f_defect: v = 1.0 - F(q, u); break;
        case CertFunction::g_defect: v = 1.0 - G(req.param, q, u); break;
      }
      if (std::isnan(v))
        throw NumericalFailure("certify_grid: NaN at node (" + fmt(q) + ", " + fmt(u) + ")", v);
      ++c.nodes_checked;
      // Strict comparison keeps the lexicographically first node on ties.
      if (v < c.worst_node.value) c.worst_node = {q, u, v};
      if (!c.failing_node && !(v - req.pad > req.threshold)) c.failing_node = GridNode{q, u, v};
      if (estimate) {
        row[j] = v;
        if (j > 0) est_u = std::max(est_u, std::abs(v - row[j - 1]) / req.steps[1]);
        if (!prev_row.empty()) est_q = std::max(est_q, std::abs(v - prev_row[j]) / req.steps[0]);
      }
    }
    if (estimate) prev_row = row;
  }

  if (estimate) {
    // Difference quotients underestimate the true constant; a factor 2 is a guess.
    c.lipschitz = {2.0 * est_q, 2.0 * est_u};
  } else {
    c.lipschitz = *req.lipschitz;
  }
  c.heuristic = estimate || !rigorous_fn;
  c.guaranteed_floor = req.threshold - 0.5 * c.lipschitz[0] * req.steps[0] -
                       0.5 * c.lipschitz[1] * req.steps[1] - req.pad;
  c.pass = !c.failing_node && c.guaranteed_floor > req.target;
  return c;
}

namespace {

Json node_json(const GridNode& n) { return {{"q", n.q}, {"u", n.u}, {"value", n.value}}; }

}  // namespace

Json to_json(const GridCertificate& c) {
  Json j = {
      {"function_id", c.function_id},
      {"rectangle", {{"q_lo", c.rectangle[0]}, {"q_hi", c.rectangle[1]}, {"u_lo", c.rectangle[2]},
                     {"u_hi", c.rectangle[3]}}},
      {"steps", {{"dq", c.steps[0]}, {"du", c.steps[1]}}},
      {"lipschitz", {{"L_q", c.lipschitz[0]}, {"L_u", c.lipschitz[1]}}},
      {"node_threshold", c.node_threshold},
      {"target", c.target},
      {"eval_error_bound", c.eval_error_bound},
      {"guaranteed_floor", c.guaranteed_floor},
      {"worst_node", node_json(c.worst_node)},
      {"failing_node", c.failing_node ? node_json(*c.failing_node) : Json(nullptr)},
      {"nodes_checked", c.nodes_checked},
      {"heuristic", c.heuristic},
      {"verdict", c.pass ? "pass" : "fail"},
  };
  return j;
}

std::string canonical_json(const GridCertificate& c) { return to_json(c).dump(2); }

Report certificate_report(const GridCertificate& c) {
  Report rep;
  rep.suite = "certify.grid";
  rep.inputs = {{"function_id", c.function_id}, {"nodes_checked", c.nodes_checked}};
  rep.values = {{"certificate", to_json(c)}};
  const double worst_margin = c.worst_node.value - c.eval_error_bound - c.node_threshold;
  rep.add({"nodes_above_threshold", "padded node values exceed the threshold", !c.failing_node,
           worst_margin, 0.0, c.eval_error_bound,
           c.failing_node ? "first failing node (" + fmt(c.failing_node->q) + ", " +
                                fmt(c.failing_node->u) + ")"
                          : "worst node (" + fmt(c.worst_node.q) + ", " + fmt(c.worst_node.u) + ")"});
  rep.add({"interior_floor_above_target", "Lipschitz slack leaves a positive floor",
           c.guaranteed_floor > c.target, c.guaranteed_floor, c.target, 0.0,
           c.heuristic ? "heuristic Lipschitz constants" : ""});
  return rep;
}

Report lipschitz_bounds_check(std::span<const double> q_grid, std::span<const double> u_grid,
                              double bound_qq, double bound_uq) {
  if (q_grid.empty() || u_grid.empty()) throw UsageError("lipschitz_bounds_check: empty grid");
  for (double q : q_grid)
    if (!(q >= 1.0 && q <= 4.0)) throw UsageError("lipschitz_bounds_check: q grid must lie in [1, 4]");
  for (double u : u_grid)
    if (!(u >= 0.0 && u <= 3.0)) throw UsageError("lipschitz_bounds_check: u grid must lie in [0, 3]");
  Report rep;
  rep.suite = "certify.lipschitz";
  rep.inputs = {{"q_points", q_grid.size()}, {"u_points", u_grid.size()}};
  GridNode wqq{0, 0, 0}, wuq{0, 0, 0};
  for (double q : q_grid)
    for (double u : u_grid) {
      const double a = std::abs(dqq_phi_tilde(q, u));
      const double b = std::abs(duq_phi_tilde(q, u));
      if (a > wqq.value) wqq = {q, u, a};
      if (b > wuq.value) wuq = {q, u, b};
    }
  rep.add({"dqq_bounded", "|d^2_q Phi~| <= 7", wqq.value <= bound_qq, wqq.value, bound_qq, 0.0,
           "max at (" + fmt(wqq.q) + ", " + fmt(wqq.u) + ")"});
  rep.add({"duq_bounded", "|d_u d_q Phi~| <= 3", wuq.value <= bound_uq, wuq.value, bound_uq, 0.0,
           "max at (" + fmt(wuq.q) + ", " + fmt(wuq.u) + ")"});
  rep.values = {{"max_abs_dqq", wqq.value}, {"max_abs_duq", wuq.value}};
  return rep;
}

}  // namespace bincube
