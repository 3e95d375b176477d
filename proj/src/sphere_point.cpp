#include "belyi/sphere_point.hpp"

#include <cmath>
#include <ostream>

namespace belyi {

std::array<double, 3> SpherePoint::on_sphere() const {
  if (infinite_) return {0.0, 0.0, 1.0};
  const double r2 = std::norm(value_);
  const double s = 1.0 + r2;
  return {2.0 * value_.real() / s, 2.0 * value_.imag() / s, (r2 - 1.0) / s};
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  const cplx z = a.value(), w = b.value();
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.is_infinite()) return os << "inf";
  return os << p.value();
}

}  // namespace belyi
