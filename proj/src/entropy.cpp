#include "bincube/entropy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "bincube/errors.hpp"
#include "bincube/specfun.hpp"

namespace bincube {
namespace {

constexpr double kLn2 = std::numbers::ln2;

// −x log₂ x, continuous at 0.
double neg_xlogx(double x) { return x < 1e-300 ? 0.0 : -x * std::log2(x); }

PmfOnLattice make_pmf(int d, int radix, Eigen::VectorXd masses) {
  if ((masses.array() < 0.0).any()) throw UsageError("pmf masses must be nonnegative");
  const double total = masses.sum();
  if (std::abs(total - 1.0) > 1e-9) throw UsageError("pmf masses must sum to 1 (got " + std::to_string(total) + ")");
  return {d, radix, std::move(masses)};
}

}  // namespace

PmfOnLattice PmfOnLattice::on_cube(const RealCubeFunction& f) { return make_pmf(f.dim(), 2, f.values()); }

PmfOnLattice PmfOnLattice::on_lattice(const LatticeFunction& h) { return make_pmf(h.d, 3, h.values); }

PmfOnLattice PmfOnLattice::normalized(const RealCubeFunction& f) {
  const double total = f.values().sum();
  if (!(total > 0.0)) throw UsageError("pmf: total mass must be positive");
  return make_pmf(f.dim(), 2, f.values() / total);
}

double entropy_bits(std::span<const double> masses) {
  std::vector<double> terms(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) terms[i] = neg_xlogx(masses[i]);
  return pairwise_sum(terms);
}

double entropy_pmf(const PmfOnLattice& m) {
  if (std::abs(m.masses.sum() - 1.0) > 1e-9) throw UsageError("entropy_pmf: masses must sum to 1");
  return entropy_bits({m.masses.data(), static_cast<std::size_t>(m.masses.size())});
}

CubeFunction normalize_l2(const CubeFunction& f) {
  const double n = f.values().norm();
  if (!(n > 0.0)) throw UsageError("normalize_l2: f must not vanish identically");
  return CubeFunction(f.dim(), f.values() / n);
}

IntegralEstimate entropy_hat(const CubeFunction& f, const QuadratureSpec& spec) {
  if (std::abs(f.values().squaredNorm() - 1.0) > 1e-10) throw UsageError("entropy_hat: f must have unit l2 norm");
  const int d = f.dim();
  IntegralEstimate est;
  if (spec.method == QuadratureMethod::adaptive1d) {
    if (d != 1) throw UsageError("entropy_hat: adaptive1d needs d = 1; use tensor (d <= 3) or qmc (d <= 10)");
    const auto a = f(0), b = f(1);
    est = integrate_circle(
        [&](double t) { return neg_xlogx(std::norm(a + std::polar(1.0, -2.0 * std::numbers::pi * t) * b)); },
        spec);
  } else {
    est = integrate_torus(
        [&](std::span<const double> xi) { return neg_xlogx(std::norm(fourier_eval(f, xi))); }, d, spec);
  }
  require_converged(est, "entropy_hat");
  return est;
}

Report uncertainty_check(const CubeFunction& f, const QuadratureSpec& spec) {
  const auto ht = entropy_hat(f, spec);
  const Eigen::VectorXd masses = f.values().cwiseAbs2();
  const double hz = entropy_bits({masses.data(), static_cast<std::size_t>(masses.size())});
  const double w = 1.0 / kLn2 - 1.0;
  const double refined = ht.value + w * hz;
  const double classical = ht.value + hz;
  const double slack = std::max(1e-7, 3.0 * ht.error_bound);
  Report rep;
  rep.suite = "entropy.uncertainty";
  rep.inputs = {{"d", f.dim()}, {"method", std::string(to_string(ht.method_used))}};
  rep.values = {{"H_T", ht.value}, {"H_Z", hz}, {"error_bound", ht.error_bound}, {"refined_sum", refined},
                {"classical_sum", classical}};
  rep.add({"refined_bound", "H_T + (1/ln2 - 1) H_Z >= 0", refined >= -slack, refined, 0.0, slack, ""});
  rep.add({"classical_bound", "H_T + H_Z >= 0", classical >= -slack, classical, 0.0, slack, ""});
  return rep;
}

Report entropy_sum_check(const PmfOnLattice& f, const PmfOnLattice& g, double tol) {
  if (f.radix != 2 || g.radix != 2) throw UsageError("entropy_sum_check: both pmfs must live on the cube");
  if (f.d != g.d) throw UsageError("entropy_sum_check: dimension mismatch");
  const auto h = convolve(RealCubeFunction(f.d, f.masses), RealCubeFunction(g.d, g.masses));
  const double hf = entropy_pmf(f), hg = entropy_pmf(g);
  const double hh = entropy_pmf(PmfOnLattice::on_lattice(h));
  Report rep;
  rep.suite = "entropy.sum";
  rep.inputs = {{"d", f.d}};
  rep.values = {{"H_f", hf},
                {"H_g", hg},
                {"H_conv", hh},
                {"margin_three_quarters", hh - 0.75 * (hf + hg)},
                {"margin_half", hh - 0.5 * (hf + hg)}};
  rep.add({"three_quarters_bound", "H(f*g) >= (3/4)(H(f) + H(g))", hh >= 0.75 * (hf + hg) - tol, hh,
           0.75 * (hf + hg), tol, ""});
  rep.add({"half_bound", "H(f*g) >= (1/2)(H(f) + H(g))", hh >= 0.5 * (hf + hg) - tol, hh, 0.5 * (hf + hg), tol,
           ""});
  rep.add({"dominates_max", "H(f*g) >= max(H(f), H(g))", hh >= std::max(hf, hg) - tol, hh, std::max(hf, hg), tol,
           ""});
  return rep;
}

namespace {

double binomial_entropy_bits(long n) {
  // log₂ of the masses C(n,k) 2^{−n}
  const double lgn = log_gamma(static_cast<double>(n) + 1.0);
  std::vector<double> terms(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    const double lg = (lgn - log_gamma(static_cast<double>(k) + 1.0) - log_gamma(static_cast<double>(n - k) + 1.0)) /
                          kLn2 -
                      static_cast<double>(n);
    terms[static_cast<std::size_t>(k)] = -std::exp2(lg) * lg;
  }
  return pairwise_sum(terms);
}

}  // namespace

BinomialEntropy binomial_entropy(long n) {
  if (n < 1 || n > 1'000'000) throw UsageError("binomial_entropy: n must lie in [1, 10^6]");
  BinomialEntropy b;
  b.n = n;
  b.h_n = binomial_entropy_bits(n);
  b.h_2n = binomial_entropy_bits(2 * n);
  b.ratio = b.h_2n / b.h_n;
  return b;
}

Report binomial_entropy_probe(long n) {
  const auto b = binomial_entropy(n);
  const double half_log = 0.5 * std::log2(static_cast<double>(n));
  Report rep;
  rep.suite = "entropy.binomial";
  rep.inputs = {{"n", n}};
  rep.values = {{"H_n", b.h_n},
                {"H_2n", b.h_2n},
                {"ratio", b.ratio},
                {"gap_to_half_log2_n", b.h_n - half_log},
                {"gaussian_approximation", 0.5 * std::log2(std::numbers::pi * std::numbers::e * n / 2.0)}};
  // B(2n) = B(n) ∗ B(n), so the averaged bound applies on Z.
  rep.add({"half_bound", "H(B(2n)) >= H(B(n))", b.h_2n >= b.h_n - 1e-12, b.h_2n, b.h_n, 1e-12, ""});
  return rep;
}

std::string binomial_probe_csv(std::span<const long> ns) {
  std::ostringstream os;
  os << "n,H_n,H_2n,ratio\n";
  for (long n : ns) {
    const auto b = binomial_entropy(n);
    os << b.n << ',' << format_double(b.h_n) << ',' << format_double(b.h_2n) << ',' << format_double(b.ratio) << '\n';
  }
  return os.str();
}

}  // namespace bincube
