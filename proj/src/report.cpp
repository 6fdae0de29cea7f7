#include "bincube/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "bincube/errors.hpp"

namespace bincube {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::violation: return "violation";
    case Verdict::usage_error: return "usage_error";
    case Verdict::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return 0;
    case Verdict::violation: return 1;
    case Verdict::usage_error: return 2;
    case Verdict::numerical_failure: return 3;
  }
  return 3;
}

Check& Report::add(Check c) {
  checks.push_back(std::move(c));
  return checks.back();
}

bool Report::passed() const { return verdict() == Verdict::pass; }

Verdict Report::verdict() const {
  if (forced != Verdict::pass) return forced;
  return first_failure() ? Verdict::violation : Verdict::pass;
}

const Check* Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

void Report::merge(const Report& other, std::string_view prefix) {
  for (auto c : other.checks) {
    c.id = std::string(prefix) + c.id;
    checks.push_back(std::move(c));
  }
  if (forced == Verdict::pass) forced = other.forced;
}

namespace {

// JSON has no representation for inf/nan; keep them readable.
Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

Json to_json(const Check& c) {
  Json j;
  j["id"] = c.id;
  j["anchor"] = c.anchor;
  j["passed"] = c.passed;
  j["value"] = number(c.value);
  j["bound"] = number(c.bound);
  j["tolerance"] = number(c.tolerance);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json to_json(const Report& r) {
  std::vector<const Check*> sorted;
  sorted.reserve(r.checks.size());
  for (const auto& c : r.checks) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Check* a, const Check* b) { return a->id < b->id; });
  Json checks = Json::array();
  for (const auto* c : sorted) checks.push_back(to_json(*c));

  Json j;
  j["schema"] = kReportSchema;
  j["suite"] = r.suite;
  j["inputs"] = r.inputs;
  j["values"] = r.values;
  j["checks"] = std::move(checks);
  j["verdict"] = to_string(r.verdict());
  if (const auto* f = r.first_failure()) j["first_failure"] = f->id;
  return j;
}

ToleranceTable ToleranceTable::defaults() {
  ToleranceTable t;
  t.values_ = {
      {"strict_margin", 1e-12},   // strict inequalities of smooth functions
      {"endpoint", 1e-12},        // closed-form endpoint values
      {"F_max", 1e-10},           // F_q <= 1 + tol
      {"G_max", 1e-10},           // G_q <= 1 + tol
      {"equality_point", 1e-8},   // value 1 at the extremal points
      {"legendre", 1e-9},         // F vs. Legendre representation
      {"ode", 1e-7},              // scaled ODE residual
      {"slope", 1e-3},            // relative, perturbative slope
      {"curvature", 1e-2},        // relative, perturbative curvature
      {"two_point", 1e-10},       // relative slack, two-point inequality
      {"four_point", 1e-12},      // relative slack, four-point inequality
      {"pde", 1e-9},              // scaled PDE residual
      {"gradient", 1e-11},        // Hessian-center gradient
      {"cert_pad", 1e-6},         // evaluation error pad of certificates
      {"ratio", 1e-9},            // HY ratio slack (quadrature paths)
      {"young_ratio", 1e-10},     // Young ratio slack (exact sums)
      {"energy", 1e-9},           // relative, energy bounds
      {"entropy", 1e-7},          // uncertainty defect (quadrature)
      {"entropy_sum", 1e-10},     // 3/4 bound (exact sums)
      {"triadic", 1e-9},          // bisection width for the triadic exponent
  };
  return t;
}

double ToleranceTable::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    throw UsageError("unknown tolerance key '" + std::string(key) + "'");
  return it->second;
}

void ToleranceTable::set(std::string_view key, double value) {
  auto it = values_.find(key);
  if (it == values_.end())
    throw UsageError("unknown tolerance key '" + std::string(key) + "'");
  if (!std::isfinite(value) || value <= 0.0)
    throw UsageError("tolerance '" + std::string(key) + "' must be positive");
  it->second = value;
}

void ToleranceTable::set_from_string(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw UsageError("tolerance override must look like key=value");
  const auto key = assignment.substr(0, eq);
  const auto text = assignment.substr(eq + 1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw UsageError("cannot parse tolerance value '" + std::string(text) + "'");
  set(key, v);
}

Json ToleranceTable::to_json() const {
  Json j = Json::object();
  for (const auto& [k, v] : values_) j[k] = v;
  return j;
}

}  // namespace bincube
