#include "belyi/rat_func.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "belyi/roots.hpp"

namespace belyi {
namespace {

// Both polynomials must be small at a candidate common root, on top of the
// roots coinciding.
constexpr double kCommonResidualTol = 1e-8;

cplx ipow(cplx z, int k) {
  cplx r{1.0};
  const bool inv = k < 0;
  int e = inv ? -k : k;
  cplx b = z;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return inv ? 1.0 / r : r;
}

int nearest_root_multiplicity(const ComplexPoly& p, cplx z0) {
  if (p.degree() < 1) return 0;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Root& r : roots(p)) {
    const double d = std::abs(r.value - z0);
    if (d < best_d) {
      best_d = d;
      best = r.multiplicity;
    }
  }
  return best_d <= kCommonRootTol * std::max(1.0, std::abs(z0)) ? best : 0;
}

}  // namespace

RatFunc::RatFunc(ComplexPoly num, ComplexPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("denominator is identically zero");
  if (num_.is_zero()) {
    den_ = ComplexPoly::constant(1.0);
    return;
  }
  if (num_.degree() >= 1 && den_.degree() >= 1) {
    std::vector<Root> rn = roots(num_);
    std::vector<Root> rd = roots(den_);
    for (Root& a : rn) {
      for (Root& b : rd) {
        if (a.multiplicity == 0 || b.multiplicity == 0) continue;
        if (std::abs(a.value - b.value) > kCommonRootTol * std::max({1.0, std::abs(a.value), std::abs(b.value)})) continue;
        const cplx c = 0.5 * (a.value + b.value);
        const double rc = std::abs(c);
        if (std::abs(num_(c)) > kCommonResidualTol * num_.abs_bound(rc) ||
            std::abs(den_(c)) > kCommonResidualTol * den_.abs_bound(rc))
          continue;
        const int k = std::min(a.multiplicity, b.multiplicity);
        for (int i = 0; i < k; ++i) {
          num_ = deflate(num_, c);
          den_ = deflate(den_, c);
        }
        a.multiplicity -= k;
        b.multiplicity -= k;
      }
    }
  }
  normalize();
}

RatFunc::RatFunc(ComplexPoly num, ComplexPoly den, Trusted) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("denominator is identically zero");
  if (num_.is_zero()) den_ = ComplexPoly::constant(1.0);
  normalize();
}

RatFunc RatFunc::from_coprime(ComplexPoly num, ComplexPoly den) {
  return RatFunc(std::move(num), std::move(den), Trusted{});
}

void RatFunc::normalize() {
  cplx pivot{0.0};
  for (const cplx& c : num_.coeffs())
    if (std::abs(c) > std::abs(pivot)) pivot = c;
  for (const cplx& c : den_.coeffs())
    if (std::abs(c) > std::abs(pivot)) pivot = c;
  if (pivot == cplx{1.0} || pivot == cplx{0.0}) return;
  const cplx s = 1.0 / pivot;
  std::vector<cplx> n(num_.coeffs()), d(den_.coeffs());
  for (cplx& c : n) c = (c == pivot) ? cplx{1.0} : c * s;
  for (cplx& c : d) c = (c == pivot) ? cplx{1.0} : c * s;
  num_ = ComplexPoly(std::move(n));
  den_ = ComplexPoly(std::move(d));
}

SpherePoint RatFunc::operator()(const SpherePoint& z) const { return evaluate(*this, z); }

std::pair<cplx, cplx> RatFunc::value_and_derivative(cplx z) const {
  const auto [n, dn] = num_.eval_with_derivative(z);
  const auto [d, dd] = den_.eval_with_derivative(z);
  return {n / d, (dn * d - n * dd) / (d * d)};
}

SpherePoint evaluate(const RatFunc& f, const SpherePoint& z) {
  const ComplexPoly& num = f.num();
  const ComplexPoly& den = f.den();
  if (num.is_zero()) return SpherePoint(0.0);
  const int dn = num.degree(), dd = den.degree();
  if (z.is_infinite()) {
    if (dn > dd) return SpherePoint::infinity();
    if (dn < dd) return SpherePoint(0.0);
    return SpherePoint(num.leading() / den.leading());
  }
  const cplx x = z.value();
  cplx n, d, scale{1.0};
  if (std::abs(x) <= 1.0) {
    n = num(x);
    d = den(x);
  } else {
    const cplx w = 1.0 / x;
    n = num.reversed(dn)(w);
    d = den.reversed(dd)(w);
    scale = ipow(x, dn - dd);
  }
  if (d == cplx{0.0}) return SpherePoint::infinity();
  const cplx v = scale * (n / d);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return SpherePoint::infinity();
  return SpherePoint(v);
}

RatFunc compose(const RatFunc& f, const RatFunc& g) {
  if (f.is_constant() || g.is_constant()) throw std::invalid_argument("compose: constant argument");
  const int d = std::max(f.num().degree(), f.den().degree());
  std::vector<ComplexPoly> apow{ComplexPoly::constant(1.0)}, bpow{ComplexPoly::constant(1.0)};
  for (int i = 1; i <= d; ++i) {
    apow.push_back(apow.back() * g.num());
    bpow.push_back(bpow.back() * g.den());
  }
  ComplexPoly num, den;
  for (int i = 0; i <= d; ++i) {
    const ComplexPoly term = apow[static_cast<std::size_t>(i)] * bpow[static_cast<std::size_t>(d - i)];
    if (f.num()[i] != cplx{0.0}) num += f.num()[i] * term;
    if (f.den()[i] != cplx{0.0}) den += f.den()[i] * term;
  }
  return RatFunc(std::move(num), std::move(den));
}

RatFunc in_chart_at_infinity(const RatFunc& f) {
  const int d = std::max(f.num().degree(), f.den().degree());
  return RatFunc::from_coprime(f.num().reversed(d), f.den().reversed(d));
}

ComplexPoly wronskian(const RatFunc& f) {
  return f.num().derivative() * f.den() - f.num() * f.den().derivative();
}

RatFunc derivative(const RatFunc& f) {
  if (f.is_constant()) return RatFunc::polynomial(ComplexPoly{});
  return RatFunc(wronskian(f), f.den() * f.den());
}

int multiplicity_at(const RatFunc& f, const SpherePoint& z0) {
  if (f.is_constant()) throw std::invalid_argument("multiplicity_at: constant function");
  if (z0.is_infinite()) return multiplicity_at(in_chart_at_infinity(f), SpherePoint(0.0));
  const SpherePoint v = evaluate(f, z0);
  const ComplexPoly g = v.is_infinite() ? f.den() : f.num() - v.value() * f.den();
  return std::max(1, nearest_root_multiplicity(g, z0.value()));
}

std::vector<CriticalPoint> critical_points(const RatFunc& f) {
  std::vector<CriticalPoint> out;
  if (f.degree() < 2) return out;
  const ComplexPoly w = wronskian(f);
  if (!w.is_zero() && w.degree() >= 1)
    for (const Root& r : roots(w)) out.push_back({SpherePoint(r.value), r.multiplicity + 1});
  const int at_inf = multiplicity_at(f, SpherePoint::infinity());
  if (at_inf >= 2) out.push_back({SpherePoint::infinity(), at_inf});
  return out;
}

std::vector<SpherePoint> critical_values(const RatFunc& f) {
  std::vector<SpherePoint> out;
  for (const CriticalPoint& c : critical_points(f)) {
    const SpherePoint v = evaluate(f, c.point);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const SpherePoint& u) { return chordal_distance(u, v) < 1e-8; });
    if (!seen) out.push_back(v);
  }
  return out;
}

RatFunc conjugate_coeffs(const RatFunc& f) {
  return RatFunc::from_coprime(f.num().conj_coeffs(), f.den().conj_coeffs());
}

bool is_real_coefficient(const RatFunc& f, double tol) {
  for (const cplx& c : f.num().coeffs())
    if (std::abs(c.imag()) >= tol) return false;
  for (const cplx& c : f.den().coeffs())
    if (std::abs(c.imag()) >= tol) return false;
  return true;
}

double coefficient_distance(const RatFunc& a, const RatFunc& b) {
  // Flatten as [num..., den...] with a common layout.
  const int dn = std::max(a.num().degree(), b.num().degree());
  const int dd = std::max(a.den().degree(), b.den().degree());
  auto flat = [&](const RatFunc& f) {
    std::vector<cplx> v;
    for (int k = 0; k <= dn; ++k) v.push_back(f.num()[k]);
    for (int k = 0; k <= dd; ++k) v.push_back(f.den()[k]);
    return v;
  };
  const std::vector<cplx> va = flat(a), vb = flat(b);
  std::size_t piv = 0;
  for (std::size_t i = 0; i < va.size(); ++i)
    if (std::abs(va[i]) > std::abs(va[piv])) piv = i;
  if (vb[piv] == cplx{0.0}) return std::numeric_limits<double>::infinity();
  const cplx s = va[piv] / vb[piv];
  double m = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) m = std::max(m, std::abs(va[i] - s * vb[i]));
  return m;
}

}  // namespace belyi
