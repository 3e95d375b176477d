#pragma once

#include <span>

#include "belyi/rat_func.hpp"

namespace belyi {

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
class Moebius {
 public:
  /// Throws std::invalid_argument when |ad - bc| <= 1e-12.
  Moebius(cplx a, cplx b, cplx c, cplx d);

  static Moebius identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  SpherePoint operator()(const SpherePoint& z) const;
  Moebius inverse() const { return {d_, -b_, -c_, a_}; }
  /// this o other
  Moebius after(const Moebius& other) const;

 private:
  cplx a_, b_, c_, d_;
};

/// Moebius map preserving the unit circle: z -> (a z + b) / (conj(b) z + conj(a)).
class CircleMoebius {
 public:
  /// Throws std::invalid_argument when ||a| - |b|| <= 1e-12.
  CircleMoebius(cplx a, cplx b);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  Moebius as_moebius() const { return {a_, b_, std::conj(b_), std::conj(a_)}; }

 private:
  cplx a_, b_;
};

/// Throws std::invalid_argument for a degenerate map.
RatFunc moebius_as_ratfunc(const Moebius& m);

/// C(z) = (z + i) / (z - i), carrying the extended real line onto the unit circle.
Moebius cayley();
Moebius cayley_inverse();

/// sign * T_n. Throws std::invalid_argument for n < 1.
RatFunc chebyshev(int n, int sign = 1);

/// sign * (z^n + z^-n) / 2. Throws std::invalid_argument for n < 1.
RatFunc circle_belyi(int n, int sign = 1);

/// unit * prod (z - a_k) / (1 - conj(a_k) z); zeros must lie in the open disk.
RatFunc blaschke_product(std::span<const cplx> zeros, cplx unit = 1.0);

/// Chordal tolerance used for critical values against {-1, 1, inf}.
inline constexpr double kBelyiTol = 1e-8;

bool is_belyi(const RatFunc& f, double tol = kBelyiTol);

/// |f| = 1 at 4 deg f + 1 equispaced points of the unit circle.
bool is_circle_to_circle(const RatFunc& f, double tol = 1e-9);

enum class CayleyDirection { ToRealLine, ToCircle };

/// ToRealLine gives C^-1 o f o C, ToCircle gives C o f o C^-1.
RatFunc conjugate_by_cayley(const RatFunc& f, CayleyDirection dir);

/// Smallest chordal distance between crit(f1) and crit(f2(c z)).
double critical_separation(const RatFunc& f1, const RatFunc& f2, cplx c);

/// A unit c for which f1 and f2(c z) share no critical point (separation
/// above 1e-6). Scans 360 angles, then refines around the best one.
/// Requires that 0 and infinity are not critical points of f2; throws
/// std::invalid_argument("apply circle Möbius first") otherwise.
cplx rotation_search(const RatFunc& f1, const RatFunc& f2);

/// circle_belyi(n) o mu o (c z) with mu = CircleMoebius(1, b) and c from
/// rotation_search against partner. Its support is still the unit circle,
/// but it shares no critical point with partner.
RatFunc twisted_circle_belyi(const RatFunc& partner, int n, cplx b = 0.3);

}  // namespace belyi
