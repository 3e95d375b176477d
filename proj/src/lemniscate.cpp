#include "belyi/lemniscate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "belyi/maps.hpp"
#include "belyi/roots.hpp"

namespace belyi {
namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kDedupRadius = 1e-6;
constexpr double kDegenerateTol = 1e-8;
constexpr int kNewtonIters = 50;

ComplexBivar complex_realify_part(const ComplexPoly& p, bool conjugate) {
  // sum a_k (x + iy)^k, or its coefficient-conjugate sum conj(a_k) (x - iy)^k.
  const cplx i{0.0, 1.0};
  const ComplexBivar z = ComplexBivar::monomial(1, 0) + ComplexBivar::monomial(0, 1, conjugate ? -i : i);
  ComplexBivar acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * z + ComplexBivar::constant(conjugate ? std::conj(p[k]) : p[k]);
  return acc;
}

RealBivar real_part(const ComplexBivar& f) {
  const int nx = f.deg_x() + 1, ny = f.deg_y() + 1;
  std::vector<double> c(static_cast<std::size_t>(nx) * ny);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) c[static_cast<std::size_t>(a) * ny + b] = f.coeff(a, b).real();
  return RealBivar(nx, ny, std::move(c));
}

// Unique positive root of lead r^n - sum_{k<n} rest_k r^k.
double positive_root(double lead, const std::vector<double>& rest) {
  const int n = static_cast<int>(rest.size());
  auto g = [&](double r) {
    double s = 0.0;
    for (int k = n - 1; k >= 0; --k) s = s * r + rest[static_cast<std::size_t>(k)];
    return lead * std::pow(r, n) - s;
  };
  double hi = 1.0;
  while (g(hi) <= 0.0) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

struct Frame {
  RatFunc p1, p2;
  std::optional<Moebius> move;  // original z = move(w)
  double scale;  // w = scale * s
};

bool near_unimodular_at_infinity(const RatFunc& p) {
  const SpherePoint v = evaluate(p, SpherePoint::infinity());
  return v.is_finite() && std::abs(std::abs(v.value()) - 1.0) <= 1e-3;
}

Frame make_frame(const RatFunc& p1, const RatFunc& p2) {
  Frame f{p1, p2, std::nullopt, 1.0};
  if (near_unimodular_at_infinity(p1) || near_unimodular_at_infinity(p2)) {
    // z = (w + b) / (conj(b) w + 1) keeps the unit circle and sends infinity to 1/conj(b).
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int attempt = 0;; ++attempt) {
      if (attempt == 64) throw std::runtime_error("intersect: no admissible sphere rotation");
      const cplx b = std::polar(0.5, angle(gen));
      const Moebius m(1.0, b, std::conj(b), 1.0);
      const RatFunc mr = moebius_as_ratfunc(m);
      const RatFunc q1 = compose(p1, mr), q2 = compose(p2, mr);
      if (near_unimodular_at_infinity(q1) || near_unimodular_at_infinity(q2)) continue;
      f = Frame{q1, q2, m, 1.0};
      break;
    }
  }
  f.scale = std::min(lemniscate_radius(f.p1), lemniscate_radius(f.p2));
  const RatFunc s = RatFunc::polynomial(ComplexPoly({0.0, f.scale}));
  f.p1 = compose(f.p1, s);
  f.p2 = compose(f.p2, s);
  return f;
}

// Sylvester determinant in y at x = x0, and the matrix's reciprocal condition number.
std::pair<cplx, double> sylvester_at(const std::vector<ComplexPoly>& fa, const std::vector<ComplexPoly>& fb, cplx x0) {
  const int m = static_cast<int>(fa.size()) - 1, l = static_cast<int>(fb.size()) - 1;
  const int n = m + l;
  if (n == 0) return {1.0, 1.0};
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < l; ++r)
    for (int j = 0; j <= m; ++j) s(r, r + j) = fa[static_cast<std::size_t>(m - j)](x0);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= l; ++j) s(l + r, r + j) = fb[static_cast<std::size_t>(l - j)](x0);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(s).singularValues();
  return {s.partialPivLu().determinant(), sv(n - 1) / sv(0)};
}

struct Eliminant {
  bool degenerate;
  ComplexPoly poly;
};

Eliminant eliminate_y(const RealBivar& f1, const RealBivar& f2) {
  std::vector<ComplexPoly> fa, fb;
  for (int j = 0; j <= f1.deg_y(); ++j) fa.push_back(f1.y_coefficient(j));
  for (int j = 0; j <= f2.deg_y(); ++j) fb.push_back(f2.y_coefficient(j));
  const int e = std::max(1, f1.degree() * f2.degree());
  const int k = 2 * e + 1;
  const double phase = 0.1;
  std::vector<cplx> v(static_cast<std::size_t>(k));
  bool all_small = true;
  for (int s = 0; s < k; ++s) {
    const auto [det, rcond] = sylvester_at(fa, fb, std::polar(1.0, phase + 2.0 * std::numbers::pi * s / k));
    v[static_cast<std::size_t>(s)] = det;
    if (rcond >= kDegenerateTol) all_small = false;
  }
  if (all_small) return {true, {}};
  std::vector<cplx> c(static_cast<std::size_t>(e) + 1);
  for (int j = 0; j <= e; ++j) {
    cplx acc{0.0};
    for (int s = 0; s < k; ++s) acc += v[static_cast<std::size_t>(s)] * std::polar(1.0, -2.0 * std::numbers::pi * j * s / k);
    c[static_cast<std::size_t>(j)] = acc / static_cast<double>(k) * std::polar(1.0, -phase * j);
  }
  return {false, ComplexPoly(std::move(c))};
}

struct System {
  RealBivar f1, f2, f1x, f1y, f2x, f2y;
  explicit System(RealBivar a, RealBivar b)
      : f1(std::move(a)), f2(std::move(b)), f1x(f1.dx()), f1y(f1.dy()), f2x(f2.dx()), f2y(f2.dy()) {}

  double residual(double x, double y) const {
    const double ax = std::abs(x), ay = std::abs(y);
    return std::max(std::abs(f1(x, y)) / f1.abs_bound(ax, ay), std::abs(f2(x, y)) / f2.abs_bound(ax, ay));
  }

  // Damped Newton; returns the final residual.
  double polish(double& x, double& y) const {
    double res = residual(x, y);
    for (int it = 0; it < kNewtonIters && res > 1e-16; ++it) {
      const double a = f1x(x, y), b = f1y(x, y), c = f2x(x, y), d = f2y(x, y);
      const double det = a * d - b * c;
      if (det == 0.0 || !std::isfinite(det)) break;
      const double g1 = f1(x, y), g2 = f2(x, y);
      const double dx = -(d * g1 - b * g2) / det, dy = -(-c * g1 + a * g2) / det;
      double lambda = 1.0, nx = x + dx, ny = y + dy, nres = residual(nx, ny);
      while (nres > res && lambda > 1e-6) {
        lambda *= 0.5;
        nx = x + lambda * dx;
        ny = y + lambda * dy;
        nres = residual(nx, ny);
      }
      if (nres > res) break;
      const bool tiny = std::hypot(nx - x, ny - y) <= 1e-16 * (1.0 + std::hypot(x, y));
      x = nx;
      y = ny;
      res = nres;
      if (tiny) break;
    }
    return res;
  }
};

double lemniscate_residual(const RatFunc& p1, const RatFunc& p2, cplx z) {
  auto one = [&](const RatFunc& p) {
    const SpherePoint v = evaluate(p, SpherePoint(z));
    return v.is_infinite() ? INFINITY : std::abs(std::abs(v.value()) - 1.0);
  };
  return std::max(one(p1), one(p2));
}

void sort_dedup(std::vector<cplx>& pts) {
  std::sort(pts.begin(), pts.end(), [](const cplx& a, const cplx& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<cplx> out;
  for (const cplx& p : pts) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const cplx& q) { return chordal_distance(p, q) <= kDedupRadius; });
    if (!seen) out.push_back(p);
  }
  pts = std::move(out);
}

}  // namespace

RealBivar realify(const RatFunc& p) {
  const ComplexBivar f = complex_realify_part(p.num(), false) * complex_realify_part(p.num(), true) -
                         complex_realify_part(p.den(), false) * complex_realify_part(p.den(), true);
  return real_part(f);
}

double lemniscate_radius(const RatFunc& p) {
  const ComplexPoly &n = p.num(), &d = p.den();
  const int dn = n.degree(), dd = d.degree();
  const int top = std::max(dn, dd);
  double lead = 0.0;
  if (dn > dd) lead = std::abs(n.leading());
  else if (dd > dn) lead = std::abs(d.leading());
  else lead = std::abs(std::abs(n.leading()) - std::abs(d.leading()));
  if (lead <= 1e-12 * std::max(n.max_abs(), d.max_abs()))
    throw std::invalid_argument("lemniscate_radius: |P(inf)| = 1, lemniscate is unbounded");
  std::vector<double> rest(static_cast<std::size_t>(top), 0.0);
  for (int k = 0; k < top; ++k) rest[static_cast<std::size_t>(k)] = std::abs(n[k]) + std::abs(d[k]);
  return 1.01 * positive_root(lead, rest);
}

IntersectionReport intersect(const RatFunc& p1, const RatFunc& p2, const IntersectOptions& opts) {
  if (p1.is_constant() || p2.is_constant()) throw std::invalid_argument("intersect: constant function");
  IntersectionReport rep;
  const int n1 = p1.degree(), n2 = p2.degree();
  rep.bound_quadratic = (n1 + n2) * (n1 + n2);
  rep.bound_sharp = 2 * n1 * n2;

  const Frame fr = make_frame(p1, p2);
  RealBivar f1 = realify(fr.p1), f2 = realify(fr.p2);
  if (opts.shared_unit_circle) {
    // The unit circle, in the rescaled coordinate.
    const double r2 = 1.0 / (fr.scale * fr.scale);
    const RealBivar circle = RealBivar::monomial(2, 0) + RealBivar::monomial(0, 2) - RealBivar::constant(r2);
    auto strip = [&](const RealBivar& f) {
      auto [q, r] = divmod_y(f, circle);
      if (r.max_abs() > 1e-9 * f.max_abs()) throw std::invalid_argument("intersect: unit circle is not a component");
      return q;
    };
    f1 = strip(f1);
    f2 = strip(f2);
  }

  const Eliminant el = eliminate_y(f1, f2);
  if (el.degenerate) {
    rep.degenerate = true;
    return rep;
  }

  const System sys(f1, f2);
  std::vector<cplx> found;
  auto accept = [&](double x, double y) {
    if (sys.polish(x, y) > 1e-10) return;
    cplx z = fr.scale * cplx{x, y};
    if (fr.move) {
      const SpherePoint back = (*fr.move)(SpherePoint(z));
      if (back.is_infinite() || std::abs(back.value()) > 1e12) return;
      z = back.value();
    }
    if (lemniscate_residual(p1, p2, z) >= kResidualTol) return;
    found.push_back(z);
  };

  if (el.poly.degree() >= 1) {
    for (const Root& xr : roots(el.poly)) {
      const cplx s = xr.value;
      if (std::abs(s.imag()) > 1e-3 * std::max(1.0, std::abs(s))) continue;
      const double x0 = s.real();
      for (const RealBivar* f : {&f1, &f2}) {
        const ComplexPoly py = f->at_x(x0);
        if (py.degree() < 1) continue;
        for (const Root& yr : roots(py)) {
          if (std::abs(yr.value.imag()) > 1e-3 * std::max(1.0, std::abs(yr.value))) continue;
          accept(x0, yr.value.real());
        }
      }
    }
  }
  sort_dedup(found);
  rep.points = found;
  for (const cplx& z : rep.points) rep.residuals.push_back(lemniscate_residual(p1, p2, z));
  rep.count = static_cast<int>(rep.points.size());
  return rep;
}

BoundCheck check_bounds(const IntersectionReport& r) {
  if (r.degenerate || !r.count) throw std::domain_error("infinite intersection");
  return {*r.count <= r.bound_quadratic, *r.count <= r.bound_sharp};
}

}  // namespace belyi
