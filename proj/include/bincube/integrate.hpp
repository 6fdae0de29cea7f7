#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

namespace bincube {

enum class QuadratureMethod { adaptive1d, tensor, qmc };

std::string_view to_string(QuadratureMethod m);

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::adaptive1d;
  double abs_tol = 1e-12;
  /// Relative tolerance; the target is max(abs_tol, rel_tol·|value|).
  double rel_tol = 0.0;
  /// Kronrod nodes per axis in the starting partition (15 per panel).
  int nodes_per_axis = 16;
  /// Total QMC samples, split evenly over `qmc_shifts` random shifts.
  std::int64_t samples = std::int64_t{1} << 20;
  int qmc_shifts = 16;
  std::uint64_t seed = 0x5eedULL;
  /// Integrand evaluations allowed for a single 1-d adaptive integral.
  std::int64_t max_evaluations = 400000;

  /// Throws UsageError if an invariant is broken.
  void validate() const;

  static QuadratureSpec adaptive(double abs_tol, double rel_tol = 0.0);
  static QuadratureSpec tensor(double abs_tol, int nodes_per_axis = 16);
  static QuadratureSpec qmc(std::int64_t samples, std::uint64_t seed);
};

struct IntegralEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  QuadratureMethod method_used = QuadratureMethod::adaptive1d;
  std::int64_t evaluations = 0;
  bool converged = true;
  /// QMC estimates carry a 3-sigma CLT bound rather than a deterministic one.
  bool statistical = false;
};

using Integrand1d = std::function<double(double)>;
using IntegrandNd = std::function<double(std::span<const double>)>;

/// Sum in a fixed binary-tree order so results do not depend on how the
/// terms were produced.
double pairwise_sum(std::span<const double> terms);

/// Adaptive Gauss–Kronrod (7/15) integration of f over [a, b] with global
/// bisection of the worst panel. A result that misses the tolerance within
/// the evaluation budget comes back with converged == false.
IntegralEstimate integrate_interval(const Integrand1d& f, double a, double b,
                                    const QuadratureSpec& spec);

/// ∫₀¹ f(t) dt.
IntegralEstimate integrate_circle(const Integrand1d& f,
                                  const QuadratureSpec& spec);

/// ∫₀¹ f(t) dt for f with f(t) = f(1−t): integrates [0, 1/2] and doubles.
IntegralEstimate integrate_circle_even(const Integrand1d& f,
                                       const QuadratureSpec& spec);

/// ∫_{T^d} f(ξ) dξ. The tensor method iterates the adaptive rule (d ≤ 3);
/// qmc uses a randomly shifted rank-1 lattice rule (d ≤ 10).
IntegralEstimate integrate_torus(const IntegrandNd& f, int d,
                                 const QuadratureSpec& spec);

/// Throws NumericalFailure when `est` did not converge.
const IntegralEstimate& require_converged(const IntegralEstimate& est,
                                          std::string_view context);

}  // namespace bincube
