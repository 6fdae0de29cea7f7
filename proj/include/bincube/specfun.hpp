#pragma once

namespace bincube {

/// Degree of a Legendre function. Only degrees above 1 are used here.
struct RealDegree {
  double value;
};

/// ln Γ(z) for z > 0. Shifts z upward by the recurrence Γ(z+1) = zΓ(z)
/// until it exceeds 15 and then sums the Stirling series.
double log_gamma(double z);

/// ψ(z) = d/dz ln Γ(z) for z > 0.
double digamma(double z);

/// ψ′(z) for z > 0. Upward recurrence to z ≥ 10, then the asymptotic
/// Bernoulli series.
double trigamma(double z);

/// Γ(a+1) / (Γ(b+1) Γ(a−b+1)), defined whenever min{a, b, a−b} > −1.
double binom_gen(double a, double b);

/// Legendre function P_ν(z) for z > 1, from the integral
/// ∫₀¹ (z + √(z²−1) cos 2πt)^ν dt.
///
/// The limit z → 1⁺ (where P_ν(1) = 1) is not accepted; callers that need
/// it substitute the value themselves.
double legendre_p(RealDegree nu, double z);

}  // namespace bincube
