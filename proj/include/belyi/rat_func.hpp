#pragma once

#include <algorithm>
#include <vector>

#include "belyi/complex_poly.hpp"
#include "belyi/sphere_point.hpp"

namespace belyi {

/// Common roots of numerator and denominator closer than this (relative)
/// are cancelled at construction.
inline constexpr double kCommonRootTol = 1e-6;

/// Rational function num/den in reduced form.
///
/// Construction cancels common roots numerically (root matching, then
/// deflation) and rescales so that the largest-magnitude coefficient across
/// num and den is exactly 1. Values are immutable.
class RatFunc {
 public:
  /// Throws std::invalid_argument when den is identically zero.
  RatFunc(ComplexPoly num, ComplexPoly den);

  static RatFunc polynomial(ComplexPoly p) { return RatFunc(std::move(p), ComplexPoly::constant(1.0)); }
  static RatFunc identity() { return polynomial(ComplexPoly({0.0, 1.0})); }
  /// Trusts the caller that num and den are already coprime; only normalizes.
  static RatFunc from_coprime(ComplexPoly num, ComplexPoly den);

  const ComplexPoly& num() const { return num_; }
  const ComplexPoly& den() const { return den_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_constant() const { return degree() == 0; }
  bool is_polynomial() const { return den_.degree() == 0; }

  SpherePoint operator()(const SpherePoint& z) const;
  /// Finite-input evaluation; returns a non-finite value at poles.
  cplx at(cplx z) const { return num_(z) / den_(z); }
  /// f(z) and f'(z) at a finite non-pole point.
  std::pair<cplx, cplx> value_and_derivative(cplx z) const;

 private:
  struct Trusted {};
  RatFunc(ComplexPoly num, ComplexPoly den, Trusted);
  void normalize();

  ComplexPoly num_;
  ComplexPoly den_;
};

SpherePoint evaluate(const RatFunc& f, const SpherePoint& z);

/// f o g. Throws std::invalid_argument if either is constant.
RatFunc compose(const RatFunc& f, const RatFunc& g);

/// f o (1/z): the function read in the chart at infinity.
RatFunc in_chart_at_infinity(const RatFunc& f);

RatFunc derivative(const RatFunc& f);

/// N'D - ND' for f = N/D, the polynomial whose roots are the finite critical points.
ComplexPoly wronskian(const RatFunc& f);

struct CriticalPoint {
  SpherePoint point;
  int multiplicity;  // local degree of f, at least 2
};

/// Critical points with local degrees; sum of (multiplicity - 1) is 2 deg f - 2.
std::vector<CriticalPoint> critical_points(const RatFunc& f);

/// Distinct critical values, deduplicated in the chordal metric.
std::vector<SpherePoint> critical_values(const RatFunc& f);

/// Local degree of f at z0 (1 at regular points).
int multiplicity_at(const RatFunc& f, const SpherePoint& z0);

/// Coefficient-wise complex conjugate f*, with f*(z) = conj(f(conj z)).
RatFunc conjugate_coeffs(const RatFunc& f);

bool is_real_coefficient(const RatFunc& f, double tol = 1e-9);

/// Largest coefficient difference after aligning the free scalar of b to a.
double coefficient_distance(const RatFunc& a, const RatFunc& b);

}  // namespace belyi
