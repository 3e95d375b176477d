#include "belyi/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace belyi {

Moebius::Moebius(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {
  if (std::abs(a * d - b * c) <= 1e-12) throw std::invalid_argument("degenerate Moebius transformation");
}

SpherePoint Moebius::operator()(const SpherePoint& z) const {
  if (z.is_infinite()) {
    if (c_ == cplx{0.0}) return SpherePoint::infinity();
    return SpherePoint(a_ / c_);
  }
  const cplx den = c_ * z.value() + d_;
  if (den == cplx{0.0}) return SpherePoint::infinity();
  return SpherePoint((a_ * z.value() + b_) / den);
}

Moebius Moebius::after(const Moebius& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

CircleMoebius::CircleMoebius(cplx a, cplx b) : a_(a), b_(b) {
  if (std::abs(std::abs(a) - std::abs(b)) <= 1e-12) throw std::invalid_argument("circle Moebius needs |a| != |b|");
}

RatFunc moebius_as_ratfunc(const Moebius& m) {
  return RatFunc::from_coprime(ComplexPoly({m.b(), m.a()}), ComplexPoly({m.d(), m.c()}));
}

Moebius cayley() {
  const cplx i{0.0, 1.0};
  return {1.0, i, 1.0, -i};
}

Moebius cayley_inverse() {
  // w -> i (w + 1) / (w - 1)
  const cplx i{0.0, 1.0};
  return {i, i, 1.0, -1.0};
}

RatFunc chebyshev(int n, int sign) {
  if (n < 1) throw std::invalid_argument("chebyshev: degree must be at least 1");
  const ComplexPoly z({0.0, 1.0});
  const ComplexPoly two_z({0.0, 2.0});
  ComplexPoly prev = ComplexPoly::constant(1.0), cur = z;
  for (int k = 1; k < n; ++k) {
    ComplexPoly next = two_z * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return RatFunc::polynomial(cur.scaled(static_cast<double>(sign)));
}

RatFunc circle_belyi(int n, int sign) {
  if (n < 1) throw std::invalid_argument("circle_belyi: degree must be at least 1");
  std::vector<cplx> num(static_cast<std::size_t>(2 * n) + 1, cplx{0.0});
  num.front() = static_cast<double>(sign);
  num.back() = static_cast<double>(sign);
  return RatFunc::from_coprime(ComplexPoly(std::move(num)), ComplexPoly::monomial(n, 2.0));
}

RatFunc blaschke_product(std::span<const cplx> zeros, cplx unit) {
  ComplexPoly num = ComplexPoly::constant(unit), den = ComplexPoly::constant(1.0);
  for (const cplx& a : zeros) {
    if (std::abs(a) >= 1.0) throw std::invalid_argument("Blaschke zero outside the open unit disk");
    num = num * ComplexPoly({-a, 1.0});
    den = den * ComplexPoly({1.0, -std::conj(a)});
  }
  return RatFunc(std::move(num), std::move(den));
}

bool is_belyi(const RatFunc& f, double tol) {
  if (f.is_constant()) throw std::invalid_argument("is_belyi: constant function");
  const SpherePoint allowed[] = {SpherePoint(-1.0), SpherePoint(1.0), SpherePoint::infinity()};
  for (const SpherePoint& v : critical_values(f)) {
    const bool ok = std::any_of(std::begin(allowed), std::end(allowed),
                                [&](const SpherePoint& a) { return chordal_distance(a, v) < tol; });
    if (!ok) return false;
  }
  return true;
}

bool is_circle_to_circle(const RatFunc& f, double tol) {
  const int samples = 4 * f.degree() + 1;
  for (int k = 0; k < samples; ++k) {
    const SpherePoint v = evaluate(f, SpherePoint(std::polar(1.0, 2.0 * std::numbers::pi * k / samples)));
    if (v.is_infinite() || std::abs(std::abs(v.value()) - 1.0) > tol) return false;
  }
  return true;
}

RatFunc conjugate_by_cayley(const RatFunc& f, CayleyDirection dir) {
  const RatFunc c = moebius_as_ratfunc(cayley());
  const RatFunc ci = moebius_as_ratfunc(cayley_inverse());
  if (dir == CayleyDirection::ToRealLine) return compose(compose(ci, f), c);
  return compose(compose(c, f), ci);
}

namespace {

std::vector<SpherePoint> critical_set(const RatFunc& f) {
  std::vector<SpherePoint> out;
  for (const CriticalPoint& c : critical_points(f)) out.push_back(c.point);
  return out;
}

double separation(const std::vector<SpherePoint>& s1, const std::vector<SpherePoint>& s2, cplx c) {
  double best = std::numeric_limits<double>::infinity();
  for (const SpherePoint& q : s2) {
    // crit of f2(c z) is crit(f2) / c.
    const SpherePoint r = q.is_infinite() ? q : SpherePoint(q.value() / c);
    for (const SpherePoint& p : s1) best = std::min(best, chordal_distance(p, r));
  }
  return best;
}

}  // namespace

double critical_separation(const RatFunc& f1, const RatFunc& f2, cplx c) {
  return separation(critical_set(f1), critical_set(f2), c);
}

cplx rotation_search(const RatFunc& f1, const RatFunc& f2) {
  if (f1.degree() < 2 || f2.degree() < 2) throw std::invalid_argument("rotation_search: degrees must be at least 2");
  const std::vector<SpherePoint> s1 = critical_set(f1), s2 = critical_set(f2);
  for (const SpherePoint& q : s2) {
    if (chordal_distance(q, SpherePoint(0.0)) < 1e-7 || chordal_distance(q, SpherePoint::infinity()) < 1e-7)
      throw std::invalid_argument("apply circle Möbius first");
  }
  constexpr int kGrid = 360;
  const double cell = 2.0 * std::numbers::pi / kGrid;
  double best_angle = 0.0, best = -1.0;
  for (int k = 0; k < kGrid; ++k) {
    const double sep = separation(s1, s2, std::polar(1.0, k * cell));
    if (sep > best) {
      best = sep;
      best_angle = k * cell;
    }
  }
  // Golden-section refinement of the separation within one grid cell.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_angle - cell, hi = best_angle + cell;
  for (int it = 0; it < 40; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (separation(s1, s2, std::polar(1.0, m1)) < separation(s1, s2, std::polar(1.0, m2))) lo = m1;
    else hi = m2;
  }
  const double refined = 0.5 * (lo + hi);
  const double angle = separation(s1, s2, std::polar(1.0, refined)) >= best ? refined : best_angle;
  if (separation(s1, s2, std::polar(1.0, angle)) <= 1e-6)
    throw std::runtime_error("rotation_search: no separating rotation found");
  return std::polar(1.0, angle);
}

RatFunc twisted_circle_belyi(const RatFunc& partner, int n, cplx b) {
  const RatFunc f = compose(circle_belyi(n), moebius_as_ratfunc(CircleMoebius(1.0, b).as_moebius()));
  const cplx c = rotation_search(partner, f);
  return compose(f, RatFunc::polynomial(ComplexPoly({0.0, c})));
}

}  // namespace belyi
