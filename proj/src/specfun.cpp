#include "bincube/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "bincube/errors.hpp"
#include "bincube/integrate.hpp"

namespace bincube {
namespace {

void require_positive(double z, const char* name) {
  if (!std::isfinite(z) || z <= 0.0) {
    throw DomainError(std::string(name) + ": argument must be positive and finite, got " +
                      std::to_string(z));
  }
}

// B_{2k} / (2k (2k−1)) for k = 1..7.
constexpr std::array<double, 7> kStirling = {
    1.0 / 12.0,   -1.0 / 360.0,         1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0};

// B_{2k} / (2k) for k = 1..7.
constexpr std::array<double, 7> kDigamma = {
    1.0 / 12.0,  -1.0 / 120.0,       1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};

// B_{2k} for k = 1..7.
constexpr std::array<double, 7> kBernoulli = {
    1.0 / 6.0,  -1.0 / 30.0,       1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};

constexpr double kLogGammaShift = 15.0;
constexpr double kPsiShift = 10.0;

}  // namespace

double log_gamma(double z) {
  require_positive(z, "log_gamma");
  double shift_log = 0.0;
  double w = z;
  if (w < kLogGammaShift) {
    double prod = 1.0;
    while (w < kLogGammaShift) {
      prod *= w;
      w += 1.0;
    }
    shift_log = std::log(prod);
  }
  const double inv = 1.0 / w;
  const double inv2 = inv * inv;
  double series = 0.0;
  double pw = inv;
  for (double c : kStirling) {
    series += c * pw;
    pw *= inv2;
  }
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (w - 0.5) * std::log(w) - w + half_log_two_pi + series - shift_log;
}

double digamma(double z) {
  require_positive(z, "digamma");
  double acc = 0.0;
  double w = z;
  while (w < kPsiShift) {
    acc -= 1.0 / w;
    w += 1.0;
  }
  const double inv2 = 1.0 / (w * w);
  double series = 0.0;
  double pw = inv2;
  for (double c : kDigamma) {
    series += c * pw;
    pw *= inv2;
  }
  return acc + std::log(w) - 0.5 / w - series;
}

double trigamma(double z) {
  require_positive(z, "trigamma");
  double acc = 0.0;
  double w = z;
  while (w < kPsiShift) {
    acc += 1.0 / (w * w);
    w += 1.0;
  }
  const double inv = 1.0 / w;
  const double inv2 = inv * inv;
  double series = 0.0;
  double pw = inv2 * inv;
  for (double c : kBernoulli) {
    series += c * pw;
    pw *= inv2;
  }
  return acc + inv + 0.5 * inv2 + series;
}

double binom_gen(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a > -1.0) || !(b > -1.0) ||
      !(a - b > -1.0)) {
    throw DomainError("binom_gen: requires min{a, b, a-b} > -1");
  }
  // Integer arguments: exact product while it fits in a double mantissa.
  if (a == std::floor(a) && b == std::floor(b) && a <= 60.0) {
    const double k = std::min(b, a - b);
    double r = 1.0;
    for (double i = 1.0; i <= k; i += 1.0) r = r * (a - k + i) / i;
    return r;
  }
  return std::exp(log_gamma(a + 1.0) - log_gamma(b + 1.0) -
                  log_gamma(a - b + 1.0));
}

double legendre_p(RealDegree nu, double z) {
  if (!std::isfinite(nu.value)) throw DomainError("legendre_p: degree must be finite");
  if (!std::isfinite(z) || !(z > 1.0)) {
    throw DomainError("legendre_p: integral representation needs z > 1");
  }
  const double s = std::sqrt((z - 1.0) * (z + 1.0));
  // z + s cos 2πt = (z − s) + 2s cos²(πt), with z − s = 1/(z + s).
  const double floor_term = 1.0 / (z + s);
  const double degree = nu.value;
  auto integrand = [=](double t) {
    const double c = std::cos(std::numbers::pi * t);
    return std::pow(floor_term + 2.0 * s * c * c, degree);
  };
  const auto spec = QuadratureSpec::adaptive(1e-300, 1e-13);
  const auto est = integrate_circle_even(integrand, spec);
  require_converged(est, "legendre_p");
  return est.value;
}

}  // namespace bincube
