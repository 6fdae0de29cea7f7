#pragma once

#include <cstdint>
#include <random>
#include <vector>

// Small seeded generators for the property tests.
namespace gen {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& r, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(r);
}

inline int integer(std::mt19937_64& r, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(r);
}

inline double log_uniform(std::mt19937_64& r, double lo, double hi) {
  return std::exp(uniform(r, std::log(lo), std::log(hi)));
}

inline std::vector<double> values(std::mt19937_64& r, int n, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = uniform(r, lo, hi);
  return v;
}

}  // namespace gen
