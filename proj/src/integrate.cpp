#include "bincube/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "bincube/errors.hpp"

namespace bincube {
namespace {

// Gauss–Kronrod 7/15 abscissae and weights on [−1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kPointsPerPanel = 15;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const {
    // priority_queue pops the largest; ties resolved by position for
    // a deterministic refinement order.
    if (error != other.error) return error < other.error;
    return a > other.a;
  }
};

Panel gauss_kronrod(const Integrand1d& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

double tolerance_for(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

IntegralEstimate integrate_tensor_level(const IntegrandNd& f, int level, int d,
                                        std::vector<double>& xi,
                                        const QuadratureSpec& spec,
                                        double& worst_inner_error,
                                        bool& inner_converged,
                                        std::int64_t& evaluations) {
  if (level == d - 1) {
    auto est = integrate_interval(
        [&](double t) {
          xi[level] = t;
          return f(xi);
        },
        0.0, 1.0, spec);
    evaluations += est.evaluations;
    return est;
  }
  auto est = integrate_interval(
      [&](double t) {
        xi[level] = t;
        double inner_worst = 0.0;
        const auto inner = integrate_tensor_level(f, level + 1, d, xi, spec, inner_worst,
                                                  inner_converged, evaluations);
        worst_inner_error = std::max(worst_inner_error, inner.error_bound + inner_worst);
        if (!inner.converged) inner_converged = false;
        return inner.value;
      },
      0.0, 1.0, spec);
  return est;
}

}  // namespace

std::string_view to_string(QuadratureMethod m) {
  switch (m) {
    case QuadratureMethod::adaptive1d:
      return "adaptive1d";
    case QuadratureMethod::tensor:
      return "tensor";
    case QuadratureMethod::qmc:
      return "qmc";
  }
  return "unknown";
}

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw UsageError("QuadratureSpec: abs_tol must be positive");
  if (!(rel_tol >= 0.0)) throw UsageError("QuadratureSpec: rel_tol must be nonnegative");
  if (max_evaluations < kPointsPerPanel) {
    throw UsageError("QuadratureSpec: evaluation budget too small");
  }
  if (method == QuadratureMethod::tensor && nodes_per_axis < 16) {
    throw UsageError("QuadratureSpec: tensor rule needs nodes_per_axis >= 16");
  }
  if (method == QuadratureMethod::qmc) {
    if (samples < (std::int64_t{1} << 10)) {
      throw UsageError("QuadratureSpec: qmc needs at least 2^10 samples");
    }
    if (qmc_shifts < 2 || samples / qmc_shifts < 2) {
      throw UsageError("QuadratureSpec: qmc needs at least two shifts of two points");
    }
  }
}

QuadratureSpec QuadratureSpec::adaptive(double abs_tol, double rel_tol) {
  QuadratureSpec s;
  s.method = QuadratureMethod::adaptive1d;
  s.abs_tol = abs_tol;
  s.rel_tol = rel_tol;
  return s;
}

QuadratureSpec QuadratureSpec::tensor(double abs_tol, int nodes_per_axis) {
  QuadratureSpec s;
  s.method = QuadratureMethod::tensor;
  s.abs_tol = abs_tol;
  s.nodes_per_axis = nodes_per_axis;
  return s;
}

QuadratureSpec QuadratureSpec::qmc(std::int64_t samples, std::uint64_t seed) {
  QuadratureSpec s;
  s.method = QuadratureMethod::qmc;
  s.samples = samples;
  s.seed = seed;
  return s;
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t mid = terms.size() / 2;
  return pairwise_sum(terms.first(mid)) + pairwise_sum(terms.subspan(mid));
}

IntegralEstimate integrate_interval(const Integrand1d& f, double a, double b,
                                    const QuadratureSpec& spec) {
  spec.validate();
  if (!(b > a)) throw UsageError("integrate_interval: empty interval");

  const int initial = std::max(1, (spec.nodes_per_axis + kPointsPerPanel - 1) / kPointsPerPanel);
  const double min_width = 1e-13 * (b - a);

  std::priority_queue<Panel> active;
  std::vector<Panel> done;
  double total_value = 0.0;
  double total_error = 0.0;
  std::int64_t evaluations = 0;

  for (int i = 0; i < initial; ++i) {
    const double lo = a + (b - a) * i / initial;
    const double hi = (i + 1 == initial) ? b : a + (b - a) * (i + 1) / initial;
    Panel p = gauss_kronrod(f, lo, hi);
    evaluations += kPointsPerPanel;
    total_value += p.value;
    total_error += p.error;
    active.push(p);
  }

  bool converged = true;
  while (total_error > tolerance_for(spec, total_value)) {
    if (active.empty()) {
      converged = false;
      break;
    }
    if (evaluations + 2 * kPointsPerPanel > spec.max_evaluations) {
      converged = false;
      break;
    }
    Panel worst = active.top();
    active.pop();
    if (worst.b - worst.a < min_width) {
      done.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    evaluations += 2 * kPointsPerPanel;
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    active.push(left);
    active.push(right);
  }

  while (!active.empty()) {
    done.push_back(active.top());
    active.pop();
  }
  std::sort(done.begin(), done.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> values(done.size());
  std::vector<double> errors(done.size());
  for (std::size_t i = 0; i < done.size(); ++i) {
    values[i] = done[i].value;
    errors[i] = done[i].error;
  }

  IntegralEstimate est;
  est.value = pairwise_sum(values);
  est.error_bound = pairwise_sum(errors);
  est.method_used = QuadratureMethod::adaptive1d;
  est.evaluations = evaluations;
  est.converged = converged && std::isfinite(est.value);
  return est;
}

IntegralEstimate integrate_circle(const Integrand1d& f, const QuadratureSpec& spec) {
  return integrate_interval(f, 0.0, 1.0, spec);
}

IntegralEstimate integrate_circle_even(const Integrand1d& f, const QuadratureSpec& spec) {
  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;
  auto est = integrate_interval(f, 0.0, 0.5, half);
  est.value *= 2.0;
  est.error_bound *= 2.0;
  return est;
}

IntegralEstimate integrate_torus(const IntegrandNd& f, int d, const QuadratureSpec& spec) {
  spec.validate();
  if (d < 1) throw UsageError("integrate_torus: dimension must be positive");

  switch (spec.method) {
    case QuadratureMethod::adaptive1d:
    case QuadratureMethod::tensor: {
      if (d > 3) {
        throw UsageError("integrate_torus: tensor rule supports d <= 3, got d = " +
                         std::to_string(d));
      }
      QuadratureSpec level_spec = spec;
      level_spec.abs_tol = spec.abs_tol / d;
      level_spec.rel_tol = spec.rel_tol / d;
      std::vector<double> xi(static_cast<std::size_t>(d), 0.0);
      double worst_inner = 0.0;
      bool inner_converged = true;
      std::int64_t evaluations = 0;
      auto est = integrate_tensor_level(f, 0, d, xi, level_spec, worst_inner,
                                        inner_converged, evaluations);
      est.error_bound += worst_inner;
      est.converged = est.converged && inner_converged;
      est.method_used = QuadratureMethod::tensor;
      if (d > 1) est.evaluations = evaluations;
      return est;
    }
    case QuadratureMethod::qmc: {
      if (d > 10) {
        throw UsageError("integrate_torus: qmc supports d <= 10, got d = " + std::to_string(d));
      }
      const std::int64_t n = spec.samples / spec.qmc_shifts;
      // Korobov generating vector (1, a, a², …) mod n with a odd and close
      // to n/φ.
      auto a = static_cast<std::int64_t>(std::llround(0.6180339887498949 * static_cast<double>(n)));
      if (a % 2 == 0) ++a;
      std::vector<std::int64_t> z(static_cast<std::size_t>(d));
      std::int64_t g = 1;
      for (int j = 0; j < d; ++j) {
        z[j] = g;
        g = (g * a) % n;
      }

      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<double> shift_means(static_cast<std::size_t>(spec.qmc_shifts));
      std::vector<double> point_values(static_cast<std::size_t>(n));
      std::vector<double> xi(static_cast<std::size_t>(d));
      std::vector<double> shift(static_cast<std::size_t>(d));
      const double inv_n = 1.0 / static_cast<double>(n);
      for (int s = 0; s < spec.qmc_shifts; ++s) {
        for (auto& v : shift) v = unit(rng);
        for (std::int64_t k = 0; k < n; ++k) {
          for (int j = 0; j < d; ++j) {
            const double x = static_cast<double>((k * z[j]) % n) * inv_n + shift[j];
            xi[j] = x - std::floor(x);
          }
          point_values[k] = f(xi);
        }
        shift_means[s] = pairwise_sum(point_values) * inv_n;
      }
      const double m = static_cast<double>(spec.qmc_shifts);
      const double mean = pairwise_sum(shift_means) / m;
      std::vector<double> sq(shift_means.size());
      for (std::size_t i = 0; i < sq.size(); ++i) {
        sq[i] = (shift_means[i] - mean) * (shift_means[i] - mean);
      }
      const double var = pairwise_sum(sq) / (m - 1.0);
      IntegralEstimate est;
      est.value = mean;
      est.error_bound = 3.0 * std::sqrt(var / m);
      est.method_used = QuadratureMethod::qmc;
      est.evaluations = n * spec.qmc_shifts;
      est.converged = std::isfinite(mean);
      est.statistical = true;
      return est;
    }
  }
  throw UsageError("integrate_torus: unknown method");
}

const IntegralEstimate& require_converged(const IntegralEstimate& est,
                                          std::string_view context) {
  if (!est.converged) {
    throw NumericalFailure(std::string(context) + ": quadrature did not reach tolerance (" +
                               std::to_string(est.evaluations) + " evaluations, error bound " +
                               std::to_string(est.error_bound) + ")",
                           est.value);
  }
  return est;
}

}  // namespace bincube
