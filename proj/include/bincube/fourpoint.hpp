#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bincube/report.hpp"

namespace bincube {

struct FourPointInput {
  double alpha0;
  double alpha1;
  double beta0;
  double beta1;
  double p;
  double q;
};

/// Curve parameter a ∈ (0, 1] of the family y/(1−y) = a·x/(1−x).
struct CurveParam {
  double a;
  explicit CurveParam(double value);
};

/// Value, gradient and Hessian of a function of two variables.
struct SecondOrder {
  double value = 0.0;
  Eigen::Vector2d grad = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
};

/// H_{p,q,r}(x,y) = (1−x)^{r/p}(1−y)^{r/q} + ((1−x)^{1/p}y^{1/q} + x^{1/p}(1−y)^{1/q})^r
///                 + x^{r/p}y^{r/q}, with closed-form derivatives. Needs (x,y) ∈ (0,1)².
SecondOrder H_derivatives(double p, double q, double r, double x, double y);

/// G_q(x,y) = H_{p,p,q}(x,y) with p = young_endpoint_p(q).
double G(double q, double x, double y);
SecondOrder G_derivatives(double q, double x, double y);

/// ((α₀β₀)^q + (α₀β₁+α₁β₀)^q + (α₁β₁)^q)^{1/q} ≤ (α₀^p+α₁^p)^{1/p}(β₀^p+β₁^p)^{1/p}.
/// Throws UsageError outside the binary Young range.
Report four_point_check(const FourPointInput& in, double rel_tol = 1e-12);

/// Max of G_q over a grid_size² grid plus refinement near the five points
/// where G_q = 1. Optionally returns the (x, y, G) samples of the grid.
Report check_G_max(double q, int grid_size, double tol = 1e-10, double equality_tol = 1e-8,
                   std::vector<std::array<double, 3>>* surface = nullptr);

/// log cosh x without overflow and without cancellation near 0.
double log_cosh(double x);

/// Both hyperbolic-cosine inequalities on the given t values (compared in
/// log form, so large |t| is fine), plus equality of the first at t = 0.
Report cosh_check(double p, double q, std::span<const double> t_grid, double margin = 1e-12);

/// Closed form of p′ against central differences, and the bounds
/// 0 < p′ ≤ 3p/(4q), 2p/(5q²) < −p″ < 4p/(5q²) on a grid in [1, 4].
Report pprime_check(std::span<const double> q_grid);

double theta_curve(CurveParam a, double x);
/// G_q(x, θ_a(x)).
double g_along_curve(double q, CurveParam a, double x);
/// Printed closed form of the second derivative of x ↦ G_q(x, θ_a(x)) at the
/// crossing x = 1/(1+√a) with the anti-diagonal.
double curve_crossing_second_derivative(double q, CurveParam a);

/// Slope at 0⁺, second derivative at the crossing (closed form against
/// differences, and its sign) and the factorization through φ₀.
Report curve_check(double q, CurveParam a);

struct PhiChain {
  double phi0;
  double phi0_prime;
  double phi1;
  double phi2;
  double phi2_prime;
};

PhiChain phi_chain(double q, CurveParam a, double u);

/// Sign changes of φ₀ on a log grid over [1e-6, 1e6]; reported, not asserted.
int phi0_sign_changes(double q, CurveParam a, int points = 20001);

/// Scaled residual of the second-order PDE satisfied by G_q. The scale is the
/// sum of magnitudes of the six (unsubtracted) terms.
double pde_residual(double q, double x, double y);

struct HessianCenter {
  Eigen::Vector2d grad;
  Eigen::Vector2d hess_diag;
  double hess_off_diag;
  /// "max" if both diagonal entries are negative, "min" if both positive,
  /// otherwise "saddle".
  std::string classification;
};

/// ∇H_{p,q,2} and the printed Hessian diagonal at (1/2, 1/2). Requires
/// 1/p + 1/q = (1/2)log₂6 within 1e-10 (UsageError otherwise).
HessianCenter hessian_center(double p, double q);

/// q on the constraint curve 1/p + 1/q = (1/2) log₂ 6.
double q_on_log6_curve(double p);

/// Bisects the sign change of the first Hessian entry along the constraint
/// curve over p ∈ [lo, hi].
double hessian_sign_flip(double lo = 1.2, double hi = 1.5, double tol = 1e-13);

}  // namespace bincube
