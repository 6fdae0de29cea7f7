#pragma once

#include <array>
#include <vector>

#include "bincube/integrate.hpp"
#include "bincube/report.hpp"

namespace bincube {

/// Values of a_q, b_q, c_q at one point.
struct OdeCoefficients {
  double a;
  double b;
  double c;
};

struct TwoPointInput {
  double alpha;
  double beta;
  double p;
  double q;
};

/// Default quadrature for the F_q integrals.
QuadratureSpec f_quadrature();

/// F_q(x) = ∫₀¹ ((1−x)^{2/p} + x^{2/p} + 2((1−x)x)^{1/p} cos 2πt)^{q/2} dt with
/// p = hy_endpoint_p(q). Needs q > 2 and x ∈ [0, 1].
double F(double q, double x, const QuadratureSpec& spec = f_quadrature());

/// F_q(x) and its first two x-derivatives, by differentiating under the
/// integral sign. Needs x ∈ (0, 1/2).
std::array<double, 3> F_with_derivatives(double q, double x,
                                         const QuadratureSpec& spec = f_quadrature());

/// F_q through the Legendre function: ((1−x)^{2/p} − x^{2/p})^{q/2} P_{q/2}(z)
/// with z = ((1−x)^{2/p} + x^{2/p}) / ((1−x)^{2/p} − x^{2/p}). x = 0 gives 1.
double F_via_legendre(double q, double x);

OdeCoefficients ode_coeffs(double q, double x);

/// |aF″ + bF′ + cF| / (|aF″| + |bF′| + |cF| + 1e-300).
double ode_residual(double q, double x, const QuadratureSpec& spec = f_quadrature());

/// (∫₀¹ |α e^{2πit} + β|^q dt)^{1/q} ≤ (α^p + β^p)^{1/p}. Throws UsageError
/// outside the binary Hausdorff–Young range.
Report two_point_check(const TwoPointInput& in, double rel_tol = 1e-10);

/// Max of F_q over a uniform grid plus refinement near 0, 1/2 and 1.
/// Optionally returns the sampled curve (x, F_q(x)).
Report check_F_max(double q, int grid_size, double tol = 1e-10, double equality_tol = 1e-8,
                   std::vector<std::array<double, 2>>* curve = nullptr);

/// Extrapolated one-sided slope at 0 and curvature at 1/2, compared with the
/// predicted −q/p and −2q²(1 − 1/p − 1/q)/(p(q−1)).
Report perturbative_check(double q, double eps, double slope_tol = 1e-3,
                          double curvature_tol = 1e-2);

/// φ(y) = p y^{2/p} + q y^{2/p−1} − q y − p.
double phi_y(double q, double p, double y);

/// Sign changes of φ on a log grid over (1, 10⁶], the bisected zero, and the
/// relation between φ and c_q under x = 1/(y+1).
Report phi_zero_analysis(double q);

/// Σⱼ binom(k,j)² a^{(r/k)(k−j)} b^{(r/k)j} with r = log₂ binom(2k, k).
double finite_sum_F(int k, double a, double b);

/// Exponent r = log₂ binom(2k, k) of finite_sum_F.
double finite_sum_exponent(int k);

/// Generalized Richardson extrapolation: fits f(h) = L + Σ c_k h^{e_k} through
/// the samples and returns L. Needs one more sample than exponents.
double richardson(const std::vector<double>& h, const std::vector<double>& f,
                  const std::vector<double>& exponents);

}  // namespace bincube
