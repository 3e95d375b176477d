#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "belyi/complex_poly.hpp"

namespace belyi {

/// Dense bivariate polynomial sum c_ij x^i y^j, stored as a rectangular
/// (deg_x + 1) x (deg_y + 1) array. T is double or cplx.
///
/// Entries below kCoeffPruneTol relative to the largest one are zeroed and
/// trailing zero rows and columns are dropped, so deg_x and deg_y are the
/// true partial degrees. The zero polynomial is a 1 x 1 zero array.
template <class T>
class BivarPoly {
 public:
  BivarPoly() : nx_(1), ny_(1), c_{T{0}} {}
  BivarPoly(int nx, int ny, std::vector<T> c) : nx_(nx), ny_(ny), c_(std::move(c)) {
    if (nx < 1 || ny < 1 || c_.size() != static_cast<std::size_t>(nx) * ny)
      throw std::invalid_argument("BivarPoly: bad coefficient array");
    prune();
  }

  static BivarPoly constant(T v) { return BivarPoly(1, 1, {v}); }
  static BivarPoly monomial(int i, int j, T v = T{1}) {
    std::vector<T> c(static_cast<std::size_t>(i + 1) * (j + 1), T{0});
    c.back() = v;
    return BivarPoly(i + 1, j + 1, std::move(c));
  }
  /// Polynomial in x only.
  static BivarPoly in_x(const std::vector<T>& coeffs) {
    return BivarPoly(static_cast<int>(coeffs.size()), 1, coeffs);
  }

  int deg_x() const { return nx_ - 1; }
  int deg_y() const { return ny_ - 1; }
  int degree() const {
    int d = 0;
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j)
        if (at(i, j) != T{0}) d = std::max(d, i + j);
    return d;
  }
  bool is_zero() const { return nx_ == 1 && ny_ == 1 && c_[0] == T{0}; }

  T coeff(int i, int j) const { return (i >= 0 && j >= 0 && i < nx_ && j < ny_) ? at(i, j) : T{0}; }

  double max_abs() const {
    double m = 0.0;
    for (const T& v : c_) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
  }

  template <class S>
  S operator()(S x, S y) const {
    S acc{0};
    for (int i = nx_ - 1; i >= 0; --i) {
      S row{0};
      for (int j = ny_ - 1; j >= 0; --j) row = row * y + S(at(i, j));
      acc = acc * x + row;
    }
    return acc;
  }

  /// sum |c_ij| |x|^i |y|^j, used as the rounding scale of an evaluation.
  double abs_bound(double ax, double ay) const {
    double acc = 0.0;
    for (int i = nx_ - 1; i >= 0; --i) {
      double row = 0.0;
      for (int j = ny_ - 1; j >= 0; --j) row = row * ay + std::abs(at(i, j));
      acc = acc * ax + row;
    }
    return acc;
  }

  BivarPoly dx() const {
    if (nx_ == 1) return {};
    std::vector<T> c(static_cast<std::size_t>(nx_ - 1) * ny_);
    for (int i = 1; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) c[static_cast<std::size_t>(i - 1) * ny_ + j] = T(static_cast<double>(i)) * at(i, j);
    return BivarPoly(nx_ - 1, ny_, std::move(c));
  }

  BivarPoly dy() const {
    if (ny_ == 1) return {};
    std::vector<T> c(static_cast<std::size_t>(nx_) * (ny_ - 1));
    for (int i = 0; i < nx_; ++i)
      for (int j = 1; j < ny_; ++j) c[static_cast<std::size_t>(i) * (ny_ - 1) + j - 1] = T(static_cast<double>(j)) * at(i, j);
    return BivarPoly(nx_, ny_ - 1, std::move(c));
  }

  /// The univariate polynomial y -> f(x0, y).
  ComplexPoly at_x(cplx x0) const {
    std::vector<cplx> out(static_cast<std::size_t>(ny_), cplx{0.0});
    for (int j = 0; j < ny_; ++j) {
      cplx v{0.0};
      for (int i = nx_ - 1; i >= 0; --i) v = v * x0 + cplx(at(i, j));
      out[static_cast<std::size_t>(j)] = v;
    }
    return ComplexPoly(std::move(out));
  }

  /// Coefficient of y^j as a polynomial in x.
  ComplexPoly y_coefficient(int j) const {
    std::vector<cplx> out(static_cast<std::size_t>(nx_), cplx{0.0});
    if (j < ny_)
      for (int i = 0; i < nx_; ++i) out[static_cast<std::size_t>(i)] = cplx(at(i, j));
    return ComplexPoly(std::move(out));
  }

  BivarPoly& operator+=(const BivarPoly& o) { return combine(o, T{1}); }
  BivarPoly& operator-=(const BivarPoly& o) { return combine(o, T{-1}); }
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }

  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
    const int nx = a.nx_ + b.nx_ - 1, ny = a.ny_ + b.ny_ - 1;
    std::vector<T> c(static_cast<std::size_t>(nx) * ny, T{0});
    for (int i = 0; i < a.nx_; ++i)
      for (int j = 0; j < a.ny_; ++j) {
        const T v = a.at(i, j);
        if (v == T{0}) continue;
        for (int k = 0; k < b.nx_; ++k)
          for (int l = 0; l < b.ny_; ++l) c[static_cast<std::size_t>(i + k) * ny + j + l] += v * b.at(k, l);
      }
    return BivarPoly(nx, ny, std::move(c));
  }

  friend BivarPoly operator*(T s, BivarPoly p) {
    for (T& v : p.c_) v *= s;
    p.prune();
    return p;
  }

  /// Division by g in the variable y. The leading y-coefficient of g must be
  /// a nonzero constant, which keeps the quotient polynomial in x.
  friend std::pair<BivarPoly, BivarPoly> divmod_y(BivarPoly f, const BivarPoly& g) {
    const int dg = g.deg_y();
    const T lead = g.coeff(0, dg);
    for (int i = 1; i <= g.deg_x(); ++i)
      if (g.coeff(i, dg) != T{0}) throw std::invalid_argument("divmod_y: leading y-coefficient must be constant");
    if (lead == T{0}) throw std::invalid_argument("divmod_y: zero divisor");
    const int nq = std::max(1, f.deg_y() - dg + 1);
    const int rnx = f.nx_ + g.nx_ - 1, rny = f.ny_;
    std::vector<T> r(static_cast<std::size_t>(rnx) * rny, T{0});
    for (int i = 0; i < f.nx_; ++i)
      for (int j = 0; j < f.ny_; ++j) r[static_cast<std::size_t>(i) * rny + j] = f.at(i, j);
    std::vector<T> q(static_cast<std::size_t>(rnx) * nq, T{0});
    for (int top = rny - 1; top >= dg; --top) {
      const int s = top - dg;
      for (int i = 0; i < rnx; ++i) {
        const T m = r[static_cast<std::size_t>(i) * rny + top] / lead;
        if (m == T{0}) continue;
        q[static_cast<std::size_t>(i) * nq + s] += m;
        for (int k = 0; k <= g.deg_x() && i + k < rnx; ++k)
          for (int l = 0; l <= dg; ++l) r[static_cast<std::size_t>(i + k) * rny + s + l] -= m * g.coeff(k, l);
      }
      for (int i = 0; i < rnx; ++i) r[static_cast<std::size_t>(i) * rny + top] = T{0};
    }
    return {BivarPoly(rnx, nq, std::move(q)), BivarPoly(rnx, rny, std::move(r))};
  }

 private:
  T at(int i, int j) const { return c_[static_cast<std::size_t>(i) * ny_ + j]; }

  BivarPoly& combine(const BivarPoly& o, T s) {
    const int nx = std::max(nx_, o.nx_), ny = std::max(ny_, o.ny_);
    std::vector<T> c(static_cast<std::size_t>(nx) * ny, T{0});
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) c[static_cast<std::size_t>(i) * ny + j] = at(i, j);
    for (int i = 0; i < o.nx_; ++i)
      for (int j = 0; j < o.ny_; ++j) c[static_cast<std::size_t>(i) * ny + j] += s * o.at(i, j);
    nx_ = nx;
    ny_ = ny;
    c_ = std::move(c);
    prune();
    return *this;
  }

  void prune() {
    const double cut = kCoeffPruneTol * max_abs();
    for (T& v : c_)
      if (std::abs(v) <= cut) v = T{0};
    int nx = nx_, ny = ny_;
    auto row_zero = [&](int i) {
      for (int j = 0; j < ny; ++j)
        if (at(i, j) != T{0}) return false;
      return true;
    };
    auto col_zero = [&](int j) {
      for (int i = 0; i < nx; ++i)
        if (at(i, j) != T{0}) return false;
      return true;
    };
    while (nx > 1 && row_zero(nx - 1)) --nx;
    while (ny > 1 && col_zero(ny - 1)) --ny;
    if (nx == nx_ && ny == ny_) return;
    std::vector<T> c(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) c[static_cast<std::size_t>(i) * ny + j] = at(i, j);
    nx_ = nx;
    ny_ = ny;
    c_ = std::move(c);
  }

  int nx_, ny_;
  std::vector<T> c_;
};

using RealBivar = BivarPoly<double>;
using ComplexBivar = BivarPoly<cplx>;

}  // namespace belyi
