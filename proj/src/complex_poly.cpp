#include "belyi/complex_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace belyi {

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { prune(); }

ComplexPoly::ComplexPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { prune(); }

void ComplexPoly::prune() {
  if (coeffs_.empty()) {
    coeffs_.push_back(0.0);
    return;
  }
  const double m = max_abs();
  const double cut = kCoeffPruneTol * m;
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
  if (m == 0.0) coeffs_.assign(1, cplx{0.0});
}

ComplexPoly ComplexPoly::monomial(int k, cplx c) {
  std::vector<cplx> v(static_cast<std::size_t>(k) + 1, cplx{0.0});
  v.back() = c;
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::from_roots(std::span<const cplx> roots, cplx lead) {
  std::vector<cplx> v{lead};
  for (const cplx& r : roots) {
    std::vector<cplx> next(v.size() + 1, cplx{0.0});
    for (std::size_t i = 0; i < v.size(); ++i) {
      next[i + 1] += v[i];
      next[i] -= r * v[i];
    }
    v = std::move(next);
  }
  return ComplexPoly(std::move(v));
}

double ComplexPoly::max_abs() const {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

cplx ComplexPoly::operator()(cplx z) const {
  cplx acc{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<cplx, cplx> ComplexPoly::eval_with_derivative(cplx z) const {
  cplx p{0.0}, dp{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

double ComplexPoly::abs_bound(double r) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (degree() == 0) return ComplexPoly{};
  std::vector<cplx> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = static_cast<double>(k) * coeffs_[k];
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::conj_coeffs() const {
  std::vector<cplx> v(coeffs_);
  for (cplx& c : v) c = std::conj(c);
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::reversed(int n) const {
  if (n < degree()) throw std::invalid_argument("reversed: n below degree");
  std::vector<cplx> v(static_cast<std::size_t>(n) + 1, cplx{0.0});
  for (int k = 0; k <= degree(); ++k) v[static_cast<std::size_t>(n - k)] = coeffs_[static_cast<std::size_t>(k)];
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::scaled(cplx s) const {
  std::vector<cplx> v(coeffs_);
  for (cplx& c : v) c *= s;
  return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::pow(int k) const {
  ComplexPoly result = ComplexPoly::constant(1.0);
  ComplexPoly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

std::vector<cplx> ComplexPoly::taylor_at(cplx c) const {
  // Repeated synthetic division by (z - c).
  std::vector<cplx> t(coeffs_);
  const std::size_t n = t.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = n - 1; k > j; --k) t[k - 1] += c * t[k];
  }
  return t;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), cplx{0.0});
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  prune();
  return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), cplx{0.0});
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  prune();
  return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_zero() || b.is_zero()) return ComplexPoly{};
  std::vector<cplx> v(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPoly(std::move(v));
}

std::pair<ComplexPoly, ComplexPoly> divmod(const ComplexPoly& a, const ComplexPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  const int da = a.degree(), db = b.degree();
  if (da < db) return {ComplexPoly{}, a};
  std::vector<cplx> r(a.coeffs());
  std::vector<cplx> q(static_cast<std::size_t>(da - db) + 1, cplx{0.0});
  const cplx lead = b.leading();
  for (int k = da - db; k >= 0; --k) {
    const cplx c = r[static_cast<std::size_t>(k + db)] / lead;
    q[static_cast<std::size_t>(k)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= c * b[j];
  }
  r.resize(static_cast<std::size_t>(std::max(db, 1)));
  return {ComplexPoly(std::move(q)), ComplexPoly(std::move(r))};
}

ComplexPoly deflate(const ComplexPoly& p, cplx r) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("deflate: constant polynomial");
  const auto& a = p.coeffs();
  std::vector<cplx> q(static_cast<std::size_t>(n));
  if (std::abs(r) <= 1.0) {
    // Forward: from the leading coefficient down.
    cplx acc = a[static_cast<std::size_t>(n)];
    for (int k = n - 1; k >= 0; --k) {
      q[static_cast<std::size_t>(k)] = acc;
      acc = a[static_cast<std::size_t>(k)] + r * acc;
    }
  } else {
    // Backward: q_0 = -a_0 / r, q_k = (q_{k-1} - a_k) / r.
    cplx prev = -a[0] / r;
    q[0] = prev;
    for (int k = 1; k < n; ++k) {
      prev = (prev - a[static_cast<std::size_t>(k)]) / r;
      q[static_cast<std::size_t>(k)] = prev;
    }
  }
  return ComplexPoly(std::move(q));
}

}  // namespace belyi
