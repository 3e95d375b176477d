#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "belyi/rat_func.hpp"

namespace belyi::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline cplx random_complex(double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng()), n(rng())};
}

inline cplx random_in_disk(double radius) {
  const double r = radius * std::sqrt(uniform(0.0, 1.0));
  return std::polar(r, uniform(0.0, 6.283185307179586));
}

inline ComplexPoly random_poly(int degree, bool real = false) {
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (cplx& x : c) x = real ? cplx{random_complex().real(), 0.0} : random_complex();
  return ComplexPoly(std::move(c));
}

/// Random function of exact degree n with num or den attaining it.
inline RatFunc random_ratfunc(int n, bool real = false) {
  const int other = std::uniform_int_distribution<int>(0, n)(rng());
  if (std::uniform_int_distribution<int>(0, 1)(rng()) == 0) return RatFunc(random_poly(n, real), random_poly(other, real));
  return RatFunc(random_poly(other, real), random_poly(n, real));
}

/// Greedy one-to-one matching of two point sets; returns the worst matched distance,
/// or infinity when sizes differ.
inline double match_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const cplx& p : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](const cplx& x, const cplx& y) { return std::abs(x - p) < std::abs(y - p); });
    worst = std::max(worst, std::abs(*it - p));
    b.erase(it);
  }
  return worst;
}

}  // namespace belyi::testing
