#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bincube/report.hpp"

namespace bincube {

/// A Lebesgue exponent in [1, ∞]. Infinity is a separate state, not a large
/// float, because several region formulas have a genuine q = ∞ branch.
class Exponent {
 public:
  /// Throws DomainError unless v is finite and ≥ 1.
  explicit Exponent(double v);
  static Exponent infinity();

  bool is_infinite() const { return infinite_; }
  /// Throws DomainError for ∞.
  double value() const;
  /// 1/p, with 1/∞ = 0.
  double reciprocal() const;
  /// Hölder conjugate p/(p−1).
  Exponent conjugate() const;

 private:
  Exponent() = default;
  double value_ = 1.0;
  bool infinite_ = false;
};

enum class Regime { hy_classical, hy_binary, young_classical, young_binary };

std::string_view to_string(Regime r);
/// Accepts the names produced by to_string; throws UsageError otherwise.
Regime parse_regime(std::string_view name);

struct ExponentPair {
  Exponent p;
  Exponent q;
  Regime regime;
};

/// log₂ Γ(q+1)/Γ(q/2+1)², the binary entropy-like quantity behind the
/// Hausdorff–Young endpoint.
double log2_central_binom(double q);

/// p(q) = q / log₂ binom(q, q/2), for q ≥ 2.
double hy_endpoint_p(double q);

/// p(q) = 2q / log₂(2^q + 2), for q ≥ 1. Written as 2q/(q + log₂(1 + 2^{1−q}))
/// so large q does not overflow.
double young_endpoint_p(double q);

/// 2 − young_endpoint_p(q), computed without cancellation. Past q ≈ 50 the
/// endpoint itself rounds to 2.0, but the gap stays positive.
double young_endpoint_gap(double q);

/// First and second derivatives of young_endpoint_p in closed form.
double young_endpoint_dp(double q);
double young_endpoint_d2p(double q);

/// Lower bound on 1/p defining each regime at the given q.
double min_inv_p(Regime r, const Exponent& q);

/// Membership of (1/p, 1/q) in the regime's region. Points within 1e-14
/// (relative) of the boundary count as inside so that endpoint pairs
/// computed in floating point are accepted.
bool in_range(const ExponentPair& pair);

struct BoundaryPoint {
  double inv_p;
  double inv_q;
};

/// Lower boundary of the region, sampled in 1/q from 1 down to 0 (so q runs
/// from 1 to ∞). Both ends are included; the q = 2 corner of the
/// Hausdorff–Young regions is always one of the samples.
std::vector<BoundaryPoint> boundary_samples(Regime r, int resolution);

/// CSV with header "inv_p,inv_q".
std::string boundary_csv(std::span<const BoundaryPoint> pts);

/// Checks the analytic facts about the Hausdorff–Young endpoint curve on a
/// grid of q values in [2, 512].
Report section2_report(std::span<const double> q_grid, double margin = 1e-12);

/// n points, log-spaced on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace bincube
