#pragma once

#include <array>
#include <complex>
#include <iosfwd>

namespace belyi {

using cplx = std::complex<double>;

/// A point of the Riemann sphere: a finite complex value or infinity.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(cplx z) : value_(z) {}  // NOLINT: implicit by intent
  SpherePoint(double x) : value_(x) {}  // NOLINT

  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Finite value; meaningless for infinity.
  cplx value() const { return value_; }

  /// Point on the unit sphere under inverse stereographic projection.
  std::array<double, 3> on_sphere() const;

 private:
  cplx value_{0.0};
  bool infinite_ = false;
};

/// Chordal distance on the unit sphere; bounded by 2.
double chordal_distance(const SpherePoint& a, const SpherePoint& b);

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

}  // namespace belyi
