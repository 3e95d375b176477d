// One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "belyi/certify.hpp"
#include "belyi/function_spec.hpp"
#include "belyi/lemniscate.hpp"
#include "belyi/maps.hpp"

using namespace belyi;

namespace {

std::mt19937_64 rng(424242);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

cplx in_disk(double r) { return std::polar(r * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi)); }

ComplexPoly random_poly(int n, bool real) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  for (cplx& x : c) x = {g(rng), real ? 0.0 : g(rng)};
  return ComplexPoly(std::move(c));
}

RatFunc random_ratfunc(int n, bool real) {
  const int other = std::uniform_int_distribution<int>(0, n)(rng);
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) return RatFunc(random_poly(n, real), random_poly(other, real));
  return RatFunc(random_poly(other, real), random_poly(n, real));
}

RatFunc random_blaschke(int n) {
  std::vector<cplx> zeros;
  for (int k = 0; k < n; ++k) zeros.push_back(in_disk(0.8));
  return blaschke_product(zeros, std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<SpherePolyline> reference(bool circle) {
  SpherePolyline l;
  const int n = circle ? 40000 : 20000;
  for (int k = 0; k <= n; ++k)
    l.push_back(circle ? SpherePoint(std::polar(1.0, 2.0 * std::numbers::pi * k / n)) : SpherePoint(-1.0 + 2.0 * k / n));
  return {l};
}

double greedy_match(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (cplx p : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx x, cplx y) { return std::abs(x - p) < std::abs(y - p); });
    worst = std::max(worst, std::abs(*it - p));
    b.erase(it);
  }
  return worst;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome family(bool circle) {
  std::ostringstream d;
  bool ok = true;
  const std::vector<SpherePolyline> ref = reference(circle);
  double worst_h = 0.0, worst_t = 0.0;
  for (int n = 1; n <= (circle ? 4 : 6); ++n)
    for (int s : {1, -1}) {
      if (circle && s < 0) continue;
      const auto t0 = std::chrono::steady_clock::now();
      const RatFunc f = circle ? circle_belyi(n) : chebyshev(n, s);
      const DessinGraph g = trace_support(f);
      const double h = hausdorff_distance(sphere_polylines(g), ref);
      const double t = seconds_since(t0);
      const std::size_t edges = circle ? 2 * static_cast<std::size_t>(n) : static_cast<std::size_t>(n);
      const DessinClass want = circle ? DessinClass::Circle : DessinClass::Segment;
      const bool good = h < 1e-6 && g.edges.size() == edges && classify(g) == want && t < 1.0;
      if (!good) d << " n=" << n << (s < 0 ? "(-)" : "") << ":h=" << h << ",edges=" << g.edges.size() << ",class=" << to_string(classify(g)) << ",t=" << t;
      ok = ok && good;
      worst_h = std::max(worst_h, h);
      worst_t = std::max(worst_t, t);
    }
  d << " max_hausdorff=" << worst_h << " max_time=" << worst_t << "s";
  return {ok, d.str()};
}

Outcome sharp_instance() {
  const IntersectionReport r = intersect(RatFunc::identity(), RatFunc::polynomial(ComplexPoly({-1.5, 1.0})));
  const double y = std::sqrt(0.4375);
  std::ostringstream d;
  d << "count=" << (r.count ? *r.count : -1) << " bound_sharp=" << r.bound_sharp;
  if (r.points.size() != 2) return {false, d.str()};
  double err = 0.0;
  for (int k = 0; k < 2; ++k) {
    const cplx want{0.75, k == 0 ? -y : y};
    err = std::max({err, std::abs(r.points[static_cast<std::size_t>(k)].real() - want.real()),
                    std::abs(r.points[static_cast<std::size_t>(k)].imag() - want.imag())});
  }
  d << " max_coordinate_error=" << err;
  return {err < 1e-9 && r.count == 2 && r.bound_sharp == 2, d.str()};
}

Outcome bound_law() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  int done = 0;
  std::ostringstream d;
  while (done < 20) {
    const int n1 = 1 + done % 3, n2 = 1 + (done / 3) % 3;
    const RatFunc p1 = random_ratfunc(n1, true), p2 = random_ratfunc(n2, true);
    const IntersectionReport r = intersect(p1, p2);
    if (r.degenerate) continue;
    ++done;
    const double m = greedy_match(r.points, oracle_intersect(p1, p2));
    worst = std::max(worst, m);
    const bool good = *r.count <= 2 * n1 * n2 && m < 1e-6;
    if (!good) d << " (" << n1 << "," << n2 << "):count=" << *r.count << ",match=" << m;
    ok = ok && good;
  }
  const double t = seconds_since(t0);
  d << " pairs=20 worst_match=" << worst << " time=" << t << "s";
  return {ok && t < 30.0, d.str()};
}

Outcome degeneracy() {
  int flagged = 0, clean = 0;
  for (int k = 0; k < 10; ++k) {
    const RatFunc u = random_blaschke(2);
    const RatFunc p1 = compose(random_blaschke(1 + k % 2), u), p2 = compose(random_blaschke(2), u);
    flagged += intersect(p1, p2).degenerate;
    const RatFunc q2(p2.num() + ComplexPoly({cplx{0.01, 0.02}, 0.03}), p2.den());
    clean += !intersect(p1, q2).degenerate;
  }
  std::ostringstream d;
  d << "composites flagged " << flagged << "/10, perturbed clean " << clean << "/10";
  return {flagged == 10 && clean == 10, d.str()};
}

Outcome cayley_dictionary() {
  int ok = 0;
  double worst_im = 0.0, worst_rt = 0.0;
  for (int k = 0; k < 50; ++k) {
    std::vector<cplx> top, bottom;
    const int nt = std::uniform_int_distribution<int>(0, 3)(rng);
    int nb = std::uniform_int_distribution<int>(0, 3)(rng);
    if (nt + nb == 0) nb = 1;
    for (int j = 0; j < nt; ++j) top.push_back(in_disk(0.9));
    for (int j = 0; j < nb; ++j) bottom.push_back(in_disk(0.9));
    const RatFunc b1 = blaschke_product(top, std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)));
    const RatFunc b2 = blaschke_product(bottom);
    const RatFunc b(b1.num() * b2.den(), b1.den() * b2.num());
    const RatFunc p = conjugate_by_cayley(b, CayleyDirection::ToRealLine);
    double im = 0.0;
    for (const ComplexPoly* q : {&p.num(), &p.den()})
      for (cplx c : q->coeffs()) im = std::max(im, std::abs(c.imag()));
    const double rt = coefficient_distance(conjugate_by_cayley(p, CayleyDirection::ToCircle), b);
    worst_im = std::max(worst_im, im);
    worst_rt = std::max(worst_rt, rt);
    ok += im < 1e-9 && rt < 1e-9;
  }
  std::ostringstream d;
  d << ok << "/50 max_imag=" << worst_im << " max_round_trip=" << worst_rt;
  return {ok == 50, d.str()};
}

Outcome certificate_anchor() {
  const RatFunc t2 = chebyshev(2), t3 = chebyshev(3);
  const auto c = find_generation_certificate(t2, t3, 1);
  if (!c) return {false, "no certificate"};
  // R1 = a v and R2 = a (2u - 1): every other coefficient vanishes.
  const cplx a = c->r1.coeff(0, 1);
  double err = std::abs(c->r2.coeff(1, 0) - 2.0 * a) + std::abs(c->r2.coeff(0, 0) + a);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) {
      if (!(i == 0 && j == 1)) err += std::abs(c->r1.coeff(i, j));
      if (j == 1 || i + j == 2) err += std::abs(c->r2.coeff(i, j));
    }
  const std::vector<SpherePoint> e = exceptional_set(*c, t2, t3);
  double eerr = e.size() == 2 ? 0.0 : INFINITY;
  for (double x : {-std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0}) {
    double best = INFINITY;
    for (const SpherePoint& p : e)
      if (p.is_finite()) best = std::min(best, std::abs(p.value() - x));
    eerr = std::max(eerr, best);
  }
  std::ostringstream d;
  d << "coefficient_error=" << err << " residual=" << c->residual << " exceptional_error=" << eerr;
  return {std::abs(a) > 0.0 && err < 1e-10 && c->residual < 1e-10 && eerr < 1e-8, d.str()};
}

struct HarnessRun {
  std::string names;
  ClassificationReport report;
};

std::vector<HarnessRun> harness_runs;

Outcome harness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  bool ok = true;
  const RatFunc j = circle_belyi(1);
  const std::vector<std::tuple<std::string, RatFunc, RatFunc>> anchors{
      {"T2,T3", chebyshev(2), chebyshev(3)},
      {"T3,T4", chebyshev(3), chebyshev(4)},
      {"T2,T5", chebyshev(2), chebyshev(5)},
      {"circle pair", j, twisted_circle_belyi(j, 2)},
  };
  for (const auto& [name, a, b] : anchors) {
    const ClassificationReport r = verify_classification(a, b);
    harness_runs.push_back({name, r});
    if (r.verdict != Verdict::Consistent) {
      ok = false;
      d << ' ' << name << '=' << to_string(r.verdict);
    }
  }
  const std::vector<std::string> corpus = builtin_corpus();
  int runs = 0, consistent = 0, violations = 0;
  for (std::size_t a = 0; a < corpus.size(); ++a)
    for (std::size_t b = a; b < corpus.size(); ++b) {
      const ClassificationReport r = verify_classification(to_ratfunc(builtin_spec(corpus[a])), to_ratfunc(builtin_spec(corpus[b])));
      harness_runs.push_back({corpus[a] + "," + corpus[b], r});
      ++runs;
      consistent += r.verdict == Verdict::Consistent;
      if (r.verdict == Verdict::Violation) {
        ++violations;
        d << " violation:" << corpus[a] << ',' << corpus[b];
      }
    }
  d << " anchors Consistent=" << (ok ? "yes" : "no") << "; corpus pairs=" << runs << " consistent=" << consistent
    << " violations=" << violations << " time=" << seconds_since(t0) << "s";
  return {ok && violations == 0, d.str()};
}

Outcome valency() {
  int checked = 0, bad = 0;
  std::ostringstream d;
  for (const HarnessRun& h : harness_runs) {
    if (!h.report.supports_equal || h.report.field_condition == FieldCondition::Unknown) continue;
    ++checked;
    if (h.report.max_valency > 2) {
      ++bad;
      d << ' ' << h.names << ":max_valency=" << h.report.max_valency;
    }
  }
  d << " pairs checked=" << checked << " above 2: " << bad;
  return {checked > 0 && bad == 0, d.str()};
}

Outcome riemann_hurwitz() {
  int ok = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 5;
    const RatFunc f = random_ratfunc(n, k % 2 == 0);
    int total = 0;
    for (const CriticalPoint& c : critical_points(f)) total += c.multiplicity - 1;
    ok += total == 2 * f.degree() - 2;
  }
  std::ostringstream d;
  d << ok << "/100 exact";
  return {ok == 100, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"segment family", [] { return family(false); }},
      {"circle family", [] { return family(true); }},
      {"sharp intersection instance", sharp_instance},
      {"bound law against oracle", bound_law},
      {"degeneracy detector", degeneracy},
      {"Cayley dictionary", cayley_dictionary},
      {"certificate anchor", certificate_anchor},
      {"classification harness", harness},
      {"valency invariant", valency},
      {"Riemann-Hurwitz suite", riemann_hurwitz},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << k + 1 << "] " << criteria[k].first << ": " << o.detail << " ("
              << seconds_since(t0) << " s)" << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failed) << '/' << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
