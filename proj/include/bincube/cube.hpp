#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "bincube/errors.hpp"
#include "bincube/integrate.hpp"
#include "bincube/report.hpp"

namespace bincube {

inline constexpr int kMaxCubeDim = 20;
inline constexpr int kMaxConvolutionDim = 12;

/// A function on {0,1}^d. Entry x is stored at the bitmask whose bit j is the
/// j-th coordinate of x.
template <class Scalar>
class CubeArray {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  CubeArray(int d, Vector values) : d_(d), values_(std::move(values)) {
    if (d_ < 1 || d_ > kMaxCubeDim) throw DomainError("cube dimension must lie in [1, 20]");
    if (values_.size() != (Eigen::Index{1} << d_))
      throw DomainError("cube function needs exactly 2^d values");
    if (!values_.allFinite()) throw DomainError("cube function values must be finite");
  }

  static CubeArray zero(int d) { return CubeArray(d, Vector::Zero(Eigen::Index{1} << d)); }
  static CubeArray delta(int d, std::uint32_t x) {
    auto f = zero(d);
    f.values_(x) = Scalar(1);
    return f;
  }
  static CubeArray ones(int d) { return CubeArray(d, Vector::Ones(Eigen::Index{1} << d)); }

  int dim() const { return d_; }
  std::uint32_t size() const { return std::uint32_t{1} << d_; }
  const Vector& values() const { return values_; }
  Scalar operator()(std::uint32_t x) const { return values_(x); }

 private:
  int d_;
  Vector values_;
};

using CubeFunction = CubeArray<std::complex<double>>;
using RealCubeFunction = CubeArray<double>;

CubeFunction complexify(const RealCubeFunction& f);

/// Nonnegative function on {0,1,2}^d, entry x at Σ x_j 3^j.
struct LatticeFunction {
  int d = 0;
  Eigen::VectorXd values;
};

/// A subset of {0,1}^d as a strictly increasing list of bitmasks.
class CubeSet {
 public:
  /// Sorts and removes duplicates; members must be < 2^d.
  CubeSet(int d, std::vector<std::uint32_t> members);
  static CubeSet full(int d);

  int dim() const { return d_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::uint32_t>& members() const { return members_; }

 private:
  int d_;
  std::vector<std::uint32_t> members_;
};

RealCubeFunction indicator(const CubeSet& a);

/// One member per line as a binary string, most significant coordinate first.
/// Blank lines and lines starting with '#' are skipped. `d` = 0 infers the
/// dimension from the first member.
CubeSet parse_cube_set(std::string_view text, int d = 0);
std::string format_cube_set(const CubeSet& a);

/// Magnitudes uniform on [0, 1], phases uniform.
CubeFunction random_cube_function(int d, std::mt19937_64& rng);
/// Values uniform on [0, 1].
RealCubeFunction random_nonneg_function(int d, std::mt19937_64& rng);
/// Each point kept with probability `density`.
CubeSet random_cube_set(int d, double density, std::mt19937_64& rng);

/// f̂(ξ) = Σ_x f(x) e^{−2πi x·ξ}, folded one coordinate at a time.
std::complex<double> fourier_eval(const CubeFunction& f, std::span<const double> xi);

/// ‖f̂‖_{L^q(T^d)}. q = 2 uses Plancherel; other even q = 2k evaluate f̂ on
/// the (k+1)^d grid of roots of unity, where averaging |f̂|^{2k} is exact
/// (needs (k+1)^d ≤ 2^22). Everything else integrates |f̂|^q with `spec`.
IntegralEstimate lq_hat_norm(const CubeFunction& f, double q, const QuadratureSpec& spec);

/// ℓ^p norm, scaled by the largest entry to avoid overflow.
double lp_norm(const Eigen::VectorXd& magnitudes, double p);

/// ‖f̂‖_q / ‖f‖_p at a pair in the binary Hausdorff–Young range; passes if
/// the ratio is at most 1 + max(1e-9, 3·error bound).
Report hy_ratio(const CubeFunction& f, double p, double q, const QuadratureSpec& spec);

/// f∗g on {0,1,2}^d (d ≤ 12). Exact for integer values whose total mass
/// product stays below 2^53.
LatticeFunction convolve(const RealCubeFunction& f, const RealCubeFunction& g);

/// ‖f∗g‖_q / (‖f‖_p ‖g‖_p) at a pair in the binary Young range.
Report young_ratio(const RealCubeFunction& f, const RealCubeFunction& g, double p, double q,
                   double tol = 1e-10);

/// E_κ(A) = ‖1̂_A‖_{2κ}^{2κ} for integer κ ≥ 1, as an exact count.
boost::multiprecision::cpp_int energy_E_exact(const CubeSet& a, int kappa);

/// E_κ(A). Integer κ goes through energy_E_exact (error bound 0); other κ
/// integrate |1̂_A|^{2κ} with `spec`.
IntegralEstimate energy_E(const CubeSet& a, double kappa, const QuadratureSpec& spec);

/// Ẽ_κ(A) = Σ_z c(z)^κ, c = 1_A ∗ 1̃_A computed exactly on {−1,0,1}^d.
double energy_E_tilde(const CubeSet& a, double kappa);

/// E_κ(A) ≤ |A|^{log₂ binom(2κ,κ)} and Ẽ_κ(A) ≤ |A|^{log₂(2^κ+2)}.
Report energy_bounds_check(const CubeSet& a, double kappa, const QuadratureSpec& spec,
                           double tol = 1e-9);

/// ‖f̂‖_q ≤ (‖f̂₀‖_q^p + ‖f̂₁‖_q^p)^{1/p} ≤ (‖f₀‖_p^p + ‖f₁‖_p^p)^{1/p} = ‖f‖_p, with
/// f₀, f₁ the slices at the last coordinate. Needs 2 ≤ d ≤ 3.
Report induction_step_check(const CubeFunction& f, double p, double q, const QuadratureSpec& spec);

/// Σ_k ((v∗v)_k)² / (Σ v_i^p)^{4/p} for v ≥ 0 on {0, …, n−1}.
double l4_ratio_1d(std::span<const double> v, double p);

struct OptimalExponent {
  double p = 0.0;
  /// Largest non-vertex local maximum of the ratio at the returned p.
  double max_ratio = 0.0;
  std::vector<double> argmax;
  int bisection_steps = 0;
};

/// Largest p for which every local maximum of l4_ratio_1d on n points, away
/// from the point masses, stays ≤ 1. Bisection on p ∈ [lo, hi] with 32 seeded
/// coordinate-ascent starts per trial; throws NumericalFailure when the best
/// value is not reproduced by two starts.
OptimalExponent optimal_l4_exponent(int n, double tol = 1e-10, double lo = 1.4, double hi = 1.6,
                                    std::uint64_t seed = 0x7121ad1cULL);

/// n = 3.
OptimalExponent triadic_optimal_p(double tol = 1e-10);

/// Best non-vertex local maximum of l4_ratio_1d at a fixed p.
std::vector<double> maximize_l4_ratio(int n, double p, std::uint64_t seed = 0x7121ad1cULL,
                                      double* best_value = nullptr);

}  // namespace bincube
