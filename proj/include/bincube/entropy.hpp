#pragma once

#include <span>
#include <string>

#include <Eigen/Core>

#include "bincube/cube.hpp"
#include "bincube/integrate.hpp"
#include "bincube/report.hpp"

namespace bincube {

/// Probability masses on {0,1}^d (radix 2) or {0,1,2}^d (radix 3), indexed as
/// CubeArray and LatticeFunction respectively.
struct PmfOnLattice {
  int d = 0;
  int radix = 2;
  Eigen::VectorXd masses;

  /// Throws UsageError unless the masses are nonnegative and sum to 1
  /// within 1e-9.
  static PmfOnLattice on_cube(const RealCubeFunction& f);
  static PmfOnLattice on_lattice(const LatticeFunction& h);
  /// Divides by the total mass first.
  static PmfOnLattice normalized(const RealCubeFunction& f);
};

/// −Σ m log₂ m in bits, with 0 log 0 = 0.
double entropy_pmf(const PmfOnLattice& m);
/// The same sum over raw masses, without the normalization check.
double entropy_bits(std::span<const double> masses);

/// f / ‖f‖₂.
CubeFunction normalize_l2(const CubeFunction& f);

/// −∫ |f̂|² log₂|f̂|² over T^d. Needs ‖f‖₂ = 1 within 1e-10.
IntegralEstimate entropy_hat(const CubeFunction& f, const QuadratureSpec& spec);

/// H_T(|f̂|²) + (1/ln2 − 1) H_Z(|f|²) ≥ 0, plus the weaker H_T + H_Z ≥ 0.
Report uncertainty_check(const CubeFunction& f, const QuadratureSpec& spec);

/// H(f∗g) ≥ (3/4)(H(f) + H(g)), with exact sums over {0,1,2}^d. Both pmfs
/// live on the same cube (radix 2), d ≤ 12.
Report entropy_sum_check(const PmfOnLattice& f, const PmfOnLattice& g, double tol = 1e-10);

struct BinomialEntropy {
  long n = 0;
  double h_n = 0.0;
  double h_2n = 0.0;
  double ratio = 0.0;
};

/// Entropies of B(n, 1/2) and B(2n, 1/2) by exact summation, n ≤ 10⁶.
BinomialEntropy binomial_entropy(long n);
Report binomial_entropy_probe(long n);
/// Header "n,H_n,H_2n,ratio".
std::string binomial_probe_csv(std::span<const long> ns);

}  // namespace bincube
