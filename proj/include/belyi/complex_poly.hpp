#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace belyi {

using cplx = std::complex<double>;

/// Coefficients whose magnitude falls below this fraction of the largest
/// coefficient are treated as rounding dust at the top of the polynomial.
inline constexpr double kCoeffPruneTol = 1e-12;

/// Dense univariate polynomial with complex coefficients in ascending powers.
///
/// The top coefficient is always significant: trailing entries below
/// kCoeffPruneTol relative to the largest coefficient are dropped at
/// construction. The zero polynomial is stored as a single zero coefficient.
class ComplexPoly {
 public:
  ComplexPoly() : coeffs_{cplx{0.0}} {}
  explicit ComplexPoly(std::vector<cplx> coeffs);
  ComplexPoly(std::initializer_list<cplx> coeffs);

  static ComplexPoly constant(cplx c) { return ComplexPoly({c}); }
  static ComplexPoly monomial(int k, cplx c = 1.0);
  static ComplexPoly from_roots(std::span<const cplx> roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0}; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx operator[](int k) const {
    return (k >= 0 && k <= degree()) ? coeffs_[static_cast<std::size_t>(k)] : cplx{0.0};
  }
  cplx leading() const { return coeffs_.back(); }
  double max_abs() const;

  cplx operator()(cplx z) const;
  std::pair<cplx, cplx> eval_with_derivative(cplx z) const;
  /// Sum of |a_k| |z|^k, the scale against which rounding in p(z) is judged.
  double abs_bound(double r) const;

  ComplexPoly derivative() const;
  ComplexPoly conj_coeffs() const;
  /// z^n p(1/z); n must be at least the degree.
  ComplexPoly reversed(int n) const;
  ComplexPoly scaled(cplx s) const;
  ComplexPoly pow(int k) const;
  /// Taylor coefficients t_j with p(c + h) = sum_j t_j h^j.
  std::vector<cplx> taylor_at(cplx c) const;

  ComplexPoly& operator+=(const ComplexPoly& o);
  ComplexPoly& operator-=(const ComplexPoly& o);

  friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
  friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
  friend ComplexPoly operator*(cplx s, const ComplexPoly& p) { return p.scaled(s); }

 private:
  void prune();
  std::vector<cplx> coeffs_;
};

/// Quotient of long division a = q*b + r; the remainder is returned second.
std::pair<ComplexPoly, ComplexPoly> divmod(const ComplexPoly& a, const ComplexPoly& b);

/// Divides out a known root r; chooses forward or backward deflation by |r|.
ComplexPoly deflate(const ComplexPoly& p, cplx r);

}  // namespace belyi
