#include "belyi/certify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "belyi/lemniscate.hpp"
#include "belyi/maps.hpp"
#include "belyi/roots.hpp"

namespace belyi {
namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double kNullTol = 1e-10;
constexpr double kResidualTol = 1e-8;
constexpr double kChopTol = 1e-11;
constexpr double kPoleMargin = 1e-2;

struct Monomial {
  int i, j;
};

std::vector<Monomial> monomials(int d) {
  std::vector<Monomial> out;
  for (int t = 0; t <= d; ++t)
    for (int i = t; i >= 0; --i) out.push_back({i, t - i});
  return out;
}

std::vector<cplx> finite_poles(const RatFunc& f) {
  std::vector<cplx> out;
  if (f.den().degree() >= 1)
    for (const Root& r : roots(f.den())) out.push_back(r.value);
  return out;
}

class ProbeSampler {
 public:
  ProbeSampler(const RatFunc& b1, const RatFunc& b2, std::uint64_t seed) : rng_(seed) {
    poles_ = finite_poles(b1);
    const std::vector<cplx> p2 = finite_poles(b2);
    poles_.insert(poles_.end(), p2.begin(), p2.end());
  }

  cplx next() {
    std::uniform_real_distribution<double> radius(0.5, 2.0), angle(0.0, 2.0 * std::numbers::pi);
    for (;;) {
      const cplx z = std::polar(radius(rng_), angle(rng_));
      if (std::all_of(poles_.begin(), poles_.end(), [&](cplx p) { return std::abs(z - p) >= kPoleMargin; })) return z;
    }
  }

 private:
  std::mt19937_64 rng_;
  std::vector<cplx> poles_;
};

cplx power(cplx x, int k) {
  cplx r = 1.0;
  for (int e = 0; e < k; ++e) r *= x;
  return r;
}

ComplexBivar bivar_from(const std::vector<Monomial>& mons, const Vector& x, int offset, int d) {
  std::vector<cplx> c(static_cast<std::size_t>(d + 1) * (d + 1), cplx{0.0});
  for (std::size_t k = 0; k < mons.size(); ++k)
    c[static_cast<std::size_t>(mons[k].i) * (d + 1) + mons[k].j] = x(offset + static_cast<Eigen::Index>(k));
  return ComplexBivar(d + 1, d + 1, std::move(c));
}

double certificate_residual(const GenerationCertificate& cert, const RatFunc& b1, const RatFunc& b2, int count, std::uint64_t seed) {
  ProbeSampler probes(b1, b2, seed);
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const cplx z = probes.next();
    worst = std::max(worst, chordal_distance(SpherePoint(z), certificate_value(cert, b1.at(z), b2.at(z))));
  }
  return worst;
}

std::optional<GenerationCertificate> try_degree(const RatFunc& b1, const RatFunc& b2, int d) {
  const std::vector<Monomial> mons = monomials(d);
  const auto m = static_cast<Eigen::Index>(mons.size());
  const Eigen::Index rows = 4 * m + 4;

  ProbeSampler probes(b1, b2, 0x5eed0000ULL + static_cast<std::uint64_t>(d));
  Matrix a(rows, 2 * m), r2vals(rows, m);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const cplx z = probes.next();
    const cplx u = b1.at(z), v = b2.at(z);
    for (Eigen::Index k = 0; k < m; ++k) {
      const cplx mono = power(u, mons[static_cast<std::size_t>(k)].i) * power(v, mons[static_cast<std::size_t>(k)].j);
      a(r, k) = -mono;
      a(r, m + k) = z * mono;
      r2vals(r, k) = mono;
    }
    const double n = a.row(r).norm();
    if (n > 0.0) a.row(r) /= n;
  }
  Eigen::VectorXd colscale(2 * m);
  for (Eigen::Index k = 0; k < 2 * m; ++k) {
    colscale(k) = a.col(k).norm();
    if (colscale(k) == 0.0) colscale(k) = 1.0;
    a.col(k) /= colscale(k);
  }

  const Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s(0) == 0.0) return std::nullopt;
  Eigen::Index first_null = s.size();
  while (first_null > 0 && s(first_null - 1) < kNullTol * s(0)) --first_null;
  const Eigen::Index nnull = 2 * m - first_null;
  if (nnull == 0) return std::nullopt;

  Matrix basis = svd.matrixV().rightCols(nnull);
  for (Eigen::Index k = 0; k < 2 * m; ++k) basis.row(k) /= colscale(k);

  // Relations Phi(b1, b2) = 0 also give null vectors (Phi, 0) and (0, Phi);
  // the combination with the largest R2(b1, b2) on the probes avoids them.
  Vector x;
  if (nnull == 1) {
    x = basis.col(0);
  } else {
    const Matrix image = r2vals * basis.bottomRows(m);
    const Eigen::JacobiSVD<Matrix> pick(image, Eigen::ComputeThinV);
    x = basis * pick.matrixV().col(0);
  }

  Eigen::Index big = 0;
  x.cwiseAbs().maxCoeff(&big);
  x /= x(big);
  const double xmax = x.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < x.size(); ++k)
    if (std::abs(x(k)) < kChopTol * xmax) x(k) = 0.0;

  GenerationCertificate cert{bivar_from(mons, x, 0, d), bivar_from(mons, x, static_cast<int>(m), d), d, 0.0};
  if (cert.r2.is_zero()) return std::nullopt;
  cert.residual = certificate_residual(cert, b1, b2, 4 * d * std::max(b1.degree(), b2.degree()), 0xf7e5ULL + static_cast<std::uint64_t>(d));
  if (!(cert.residual < kResidualTol)) return std::nullopt;
  return cert;
}

std::vector<ComplexPoly> powers(const ComplexPoly& p, int n) {
  std::vector<ComplexPoly> out{ComplexPoly::constant(1.0)};
  for (int k = 1; k <= n; ++k) out.push_back(out.back() * p);
  return out;
}

struct InnerFit {
  std::optional<RatFunc> inner;
  double residual;
};

InnerFit fit_inner(const RatFunc& b, const RatFunc& w) {
  const int k = b.degree() / w.degree();
  const std::vector<ComplexPoly> wn = powers(w.num(), k), wd = powers(w.den(), k);
  std::vector<ComplexPoly> cols;
  for (int i = 0; i <= k; ++i) {
    const ComplexPoly p = wn[static_cast<std::size_t>(i)] * wd[static_cast<std::size_t>(k - i)];
    cols.push_back(ComplexPoly::constant(-1.0) * (b.den() * p));
  }
  for (int i = 0; i <= k; ++i) {
    const ComplexPoly p = wn[static_cast<std::size_t>(i)] * wd[static_cast<std::size_t>(k - i)];
    cols.push_back(b.num() * p);
  }
  int rows = 0;
  for (const ComplexPoly& c : cols) rows = std::max(rows, c.degree() + 1);
  const auto ncols = static_cast<Eigen::Index>(cols.size());
  rows = std::max(rows, static_cast<int>(ncols));

  Matrix a = Matrix::Zero(rows, ncols);
  Eigen::VectorXd scale(ncols);
  for (Eigen::Index c = 0; c < ncols; ++c) {
    const ComplexPoly& p = cols[static_cast<std::size_t>(c)];
    for (int r = 0; r <= p.degree(); ++r) a(r, c) = p[r];
    scale(c) = a.col(c).norm() > 0.0 ? a.col(c).norm() : 1.0;
    a.col(c) /= scale(c);
  }
  const Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (!(s(s.size() - 1) < kNullTol * s(0))) return {std::nullopt, INFINITY};
  Vector x = svd.matrixV().col(ncols - 1);
  for (Eigen::Index c = 0; c < ncols; ++c) x(c) /= scale(c);

  std::vector<cplx> num(static_cast<std::size_t>(k + 1)), den(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) {
    num[static_cast<std::size_t>(i)] = x(i);
    den[static_cast<std::size_t>(i)] = x(k + 1 + i);
  }
  try {
    const RatFunc inner{ComplexPoly(num), ComplexPoly(den)};
    if (inner.is_constant()) return {std::nullopt, INFINITY};
    const double res = coefficient_distance(compose(inner, w), b);
    return {inner, res};
  } catch (const std::invalid_argument&) {
    return {std::nullopt, INFINITY};
  }
}

bool real_or_infinite(const SpherePoint& p) {
  return p.is_infinite() || std::abs(p.value().imag()) <= 1e-9 * std::max(1.0, std::abs(p.value()));
}

}  // namespace

SpherePoint certificate_value(const GenerationCertificate& cert, cplx u, cplx v) {
  const cplx q = cert.r2(u, v);
  if (q == cplx{0.0}) return SpherePoint::infinity();
  return SpherePoint(cert.r1(u, v) / q);
}

std::optional<GenerationCertificate> find_generation_certificate(const RatFunc& b1, const RatFunc& b2, int maxdeg) {
  if (b1.is_constant() || b2.is_constant()) throw std::invalid_argument("find_generation_certificate: constant input");
  for (int d = 1; d <= maxdeg; ++d)
    if (std::optional<GenerationCertificate> c = try_degree(b1, b2, d)) return c;
  return std::nullopt;
}

std::vector<SpherePoint> exceptional_set(const GenerationCertificate& cert, const RatFunc& b1, const RatFunc& b2) {
  const ComplexBivar& r2 = cert.r2;
  const int nx = r2.deg_x(), ny = r2.deg_y();
  const std::vector<ComplexPoly> n1 = powers(b1.num(), nx), d1 = powers(b1.den(), nx);
  const std::vector<ComplexPoly> n2 = powers(b2.num(), ny), d2 = powers(b2.den(), ny);

  // R2(N1/D1, N2/D2) = num / (D1^nx D2^ny)
  ComplexPoly num;
  double scale = 0.0;
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const cplx c = r2.coeff(i, j);
      if (c == cplx{0.0}) continue;
      const ComplexPoly term = n1[static_cast<std::size_t>(i)] * d1[static_cast<std::size_t>(nx - i)] *
                               n2[static_cast<std::size_t>(j)] * d2[static_cast<std::size_t>(ny - j)];
      scale = std::max(scale, std::abs(c) * term.max_abs());
      num += c * term;
    }
  if (num.is_zero() || num.max_abs() <= 1e-9 * scale)
    throw std::domain_error("exceptional_set: R2(b1, b2) vanishes identically");

  const RatFunc comp(num, d1.back() * d2.back());
  std::vector<SpherePoint> out;
  if (comp.num().degree() >= 1)
    for (const Root& r : roots(comp.num())) out.push_back(SpherePoint(r.value));
  if (comp.num().degree() < comp.den().degree()) out.push_back(SpherePoint::infinity());
  return out;
}

std::vector<cplx> offline_intersection_points(const RatFunc& b1, const RatFunc& b2) {
  if (!is_real_coefficient(b1) || !is_real_coefficient(b2))
    throw std::invalid_argument("offline_intersection_points: real coefficients required");
  const RatFunc c1 = conjugate_by_cayley(b1, CayleyDirection::ToCircle);
  const RatFunc c2 = conjugate_by_cayley(b2, CayleyDirection::ToCircle);
  IntersectOptions opts;
  opts.shared_unit_circle = true;
  const IntersectionReport rep = intersect(c1, c2, opts);
  if (rep.degenerate) throw DecompositionCase();

  const Moebius back = cayley_inverse();
  std::vector<cplx> out;
  for (cplx w : rep.points) {
    // w = 1 is the image of infinity, which lies on the real line too.
    const SpherePoint z = back(SpherePoint(w));
    if (chordal_distance(z, SpherePoint::infinity()) < 1e-6 || std::abs(z.value().imag()) < 1e-7) continue;
    out.push_back(z.value());
  }
  // i is sent to infinity by the Cayley transform, outside what intersect sees.
  const cplx i{0.0, 1.0};
  if (real_or_infinite(b1(SpherePoint(i))) && real_or_infinite(b2(SpherePoint(i)))) out.push_back(i);

  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  std::vector<cplx> uniq;
  for (cplx z : out)
    if (std::none_of(uniq.begin(), uniq.end(), [&](cplx q) { return chordal_distance(q, z) < 1e-6; })) uniq.push_back(z);
  return uniq;
}

std::vector<SharedCriticalPoint> common_critical_points(const RatFunc& b1, const RatFunc& b2) {
  const std::vector<CriticalPoint> c1 = critical_points(b1), c2 = critical_points(b2);
  const bool polys = b1.is_polynomial() && b2.is_polynomial();
  std::vector<SharedCriticalPoint> out;
  for (const CriticalPoint& p : c1)
    for (const CriticalPoint& q : c2)
      if (chordal_distance(p.point, q.point) < 1e-7) {
        out.push_back({p.point, polys && p.point.is_infinite()});
        break;
      }
  return out;
}

CommonFactorResult verify_common_factor(const RatFunc& b1, const RatFunc& b2, const RatFunc& w) {
  const int dw = w.degree();
  if (dw < 2 || b1.degree() % dw != 0 || b2.degree() % dw != 0)
    throw std::invalid_argument("verify_common_factor: deg W must be at least 2 and divide both degrees");
  const InnerFit f1 = fit_inner(b1, w), f2 = fit_inner(b2, w);
  CommonFactorResult r;
  r.residual1 = f1.residual;
  r.residual2 = f2.residual;
  r.ok = f1.inner && f2.inner && f1.residual < kResidualTol && f2.residual < kResidualTol;
  if (r.ok) {
    r.inner1 = f1.inner;
    r.inner2 = f2.inner;
  }
  return r;
}

std::string to_string(FieldCondition f) {
  switch (f) {
    case FieldCondition::Certified: return "Certified";
    case FieldCondition::CoprimeDegrees: return "CoprimeDegrees";
    case FieldCondition::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "Consistent";
    case Verdict::Violation: return "Violation";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ClassificationReport verify_classification(const RatFunc& b1, const RatFunc& b2, const TraceOptions& opts) {
  if (b1.is_constant() || b2.is_constant() || !is_belyi(b1) || !is_belyi(b2)) throw NotBelyi();

  auto trace1 = std::async(std::launch::async, [&] { return trace_support(b1, opts); });
  auto trace2 = std::async(std::launch::async, [&] { return trace_support(b2, opts); });
  auto field = std::async(std::launch::async, [&]() -> std::pair<FieldCondition, std::optional<int>> {
    if (std::gcd(b1.degree(), b2.degree()) == 1) return {FieldCondition::CoprimeDegrees, std::nullopt};
    if (auto c = find_generation_certificate(b1, b2, b1.degree() + b2.degree())) return {FieldCondition::Certified, c->degree_bound};
    return {FieldCondition::Unknown, std::nullopt};
  });

  const DessinGraph g1 = trace1.get(), g2 = trace2.get();
  const auto [fc, cdeg] = field.get();

  ClassificationReport r;
  r.support_distance = support_distance(g1, g2);
  r.supports_equal = r.support_distance < 10.0 * opts.step;
  r.field_condition = fc;
  r.certificate_degree = cdeg;
  r.class1 = classify(g1);
  r.class2 = classify(g2);
  for (const DessinGraph* g : {&g1, &g2})
    for (const Vertex& v : g->vertices) r.max_valency = std::max(r.max_valency, v.valency);

  const bool both_segments = r.class1 == DessinClass::Segment && r.class2 == DessinClass::Segment;
  const bool both_circles = r.class1 == DessinClass::Circle && r.class2 == DessinClass::Circle;
  if (!r.supports_equal || r.field_condition == FieldCondition::Unknown) r.verdict = Verdict::Inconclusive;
  else if (both_segments || both_circles) r.verdict = Verdict::Consistent;
  else r.verdict = Verdict::Violation;
  return r;
}

std::string to_key_values(const ClassificationReport& r) {
  std::ostringstream os;
  os << "supports_equal=" << (r.supports_equal ? "true" : "false") << '\n'
     << "support_distance=" << r.support_distance << '\n'
     << "field_condition=" << to_string(r.field_condition) << '\n';
  if (r.certificate_degree) os << "certificate_degree=" << *r.certificate_degree << '\n';
  os << "class1=" << to_string(r.class1) << '\n'
     << "class2=" << to_string(r.class2) << '\n'
     << "max_valency=" << r.max_valency << '\n'
     << "verdict=" << to_string(r.verdict) << '\n';
  return os.str();
}

}  // namespace belyi
