#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "belyi/dessin.hpp"
#include "belyi/maps.hpp"

using namespace belyi;

namespace {

RatFunc poly(std::initializer_list<cplx> c) { return RatFunc::polynomial(ComplexPoly(c)); }

std::vector<SpherePolyline> unit_segment() {
  SpherePolyline l;
  for (int k = 0; k <= 20000; ++k) l.push_back(SpherePoint(-1.0 + k * 1e-4));
  return {l};
}

std::vector<SpherePolyline> unit_circle() {
  SpherePolyline l;
  for (int k = 0; k <= 40000; ++k) l.push_back(SpherePoint(std::polar(1.0, 2.0 * std::numbers::pi * k / 40000)));
  return {l};
}

int valency_sum(const DessinGraph& g, Color c) {
  int s = 0;
  for (const Vertex& v : g.vertices)
    if (v.color == c) s += v.valency;
  return s;
}

const SpherePoint* find_vertex(const std::vector<Vertex>& vs, Color c, cplx z) {
  for (const Vertex& v : vs)
    if (v.color == c && v.position.is_finite() && std::abs(v.position.value() - z) < 1e-9) return &v.position;
  return nullptr;
}

int valency_at(const std::vector<Vertex>& vs, Color c, cplx z) {
  for (const Vertex& v : vs)
    if (v.color == c && v.position.is_finite() && std::abs(v.position.value() - z) < 1e-9) return v.valency;
  return 0;
}

// 2/z^2 - 1: the dessin passes through infinity (a white vertex of valency 2).
RatFunc through_infinity() { return compose(chebyshev(2), RatFunc(ComplexPoly({1.0}), ComplexPoly({0.0, 1.0}))); }
// T3(1/z): one edge seed sits at infinity.
RatFunc seed_at_infinity() { return compose(chebyshev(3), RatFunc(ComplexPoly({1.0}), ComplexPoly({0.0, 1.0}))); }
// T2 moved by a Moebius map, so vertices and seeds are generic points.
RatFunc moved_segment() { return compose(chebyshev(2), moebius_as_ratfunc(Moebius(1.0, cplx{0.3, 0.2}, cplx{0.4, -0.1}, 1.0))); }

void check_invariants(const DessinGraph& g) {
  const int n = g.beta.degree();
  CHECK(static_cast<int>(g.edges.size()) == n);
  CHECK(valency_sum(g, Color::White) == n);
  CHECK(valency_sum(g, Color::Black) == n);
  for (const Vertex& v : g.vertices) {
    CHECK(v.valency == multiplicity_at(g.beta, v.position));
    const SpherePoint bv = evaluate(g.beta, v.position);
    CHECK(chordal_distance(bv, SpherePoint(v.color == Color::White ? -1.0 : 1.0)) < 1e-8);
  }
  for (const Edge& e : g.edges) {
    REQUIRE(e.white >= 0);
    REQUIRE(e.black >= 0);
    CHECK(g.vertices[static_cast<std::size_t>(e.white)].color == Color::White);
    CHECK(g.vertices[static_cast<std::size_t>(e.black)].color == Color::Black);
    double worst_im = 0.0, worst_re = 0.0;
    for (const ChartPoint& p : e.polyline) {
      const SpherePoint v = evaluate(g.beta, p.point());
      REQUIRE(v.is_finite());
      worst_im = std::max(worst_im, std::abs(v.value().imag()));
      worst_re = std::max(worst_re, std::abs(v.value().real()) - 1.0);
    }
    CHECK(worst_im < 1e-8);
    CHECK(worst_re <= 1e-8);
  }
}

}  // namespace

TEST_CASE("vertices of small Belyi functions") {
  const std::vector<Vertex> t2 = vertices(chebyshev(2));
  CHECK(t2.size() == 3);
  CHECK(valency_at(t2, Color::Black, 1.0) == 1);
  CHECK(valency_at(t2, Color::Black, -1.0) == 1);
  CHECK(valency_at(t2, Color::White, 0.0) == 2);

  const std::vector<Vertex> j = vertices(circle_belyi(1));
  CHECK(j.size() == 2);
  CHECK(valency_at(j, Color::Black, 1.0) == 2);
  CHECK(valency_at(j, Color::White, -1.0) == 2);

  const std::vector<Vertex> star = vertices(poly({-1.0, 0.0, 0.0, 2.0}));
  CHECK(star.size() == 4);
  CHECK(valency_at(star, Color::White, 0.0) == 3);
  for (int k = 0; k < 3; ++k) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / 3);
    CHECK(find_vertex(star, Color::Black, w) != nullptr);
    CHECK(valency_at(star, Color::Black, w) == 1);
  }

  const std::vector<Vertex> inf = vertices(through_infinity());
  bool has_inf = false;
  for (const Vertex& v : inf)
    if (v.position.is_infinite()) {
      has_inf = true;
      CHECK(v.color == Color::White);
      CHECK(v.valency == 2);
    }
  CHECK(has_inf);

  CHECK_THROWS_AS(vertices(RatFunc::polynomial(ComplexPoly::monomial(2))), NotBelyi);
}

TEST_CASE("segment family traces") {
  const DessinGraph g2 = trace_support(chebyshev(2));
  CHECK(g2.edges.size() == 2);
  CHECK(hausdorff_distance(sphere_polylines(g2), unit_segment()) < 1e-6);
  CHECK(classify(g2) == DessinClass::Segment);
  // Path -1 -- 0 -- 1: both edges end at the white vertex 0.
  CHECK(g2.edges[0].white == g2.edges[1].white);
  CHECK(g2.edges[0].black != g2.edges[1].black);

  const DessinGraph g3 = trace_support(chebyshev(3));
  CHECK(g3.edges.size() == 3);
  CHECK(classify(g3) == DessinClass::Segment);
  CHECK(hausdorff_distance(sphere_polylines(g3), unit_segment()) < 1e-6);
  CHECK(classify(trace_support(chebyshev(4))) == DessinClass::Segment);
  check_invariants(g2);
  check_invariants(g3);
}

TEST_CASE("circle family traces") {
  const DessinGraph j = trace_support(circle_belyi(1));
  CHECK(j.edges.size() == 2);
  CHECK(hausdorff_distance(sphere_polylines(j), unit_circle()) < 1e-6);
  CHECK(classify(j) == DessinClass::Circle);
  const DessinGraph j2 = trace_support(circle_belyi(2));
  CHECK(j2.edges.size() == 4);
  CHECK(classify(j2) == DessinClass::Circle);
  check_invariants(j);
  check_invariants(j2);
}

TEST_CASE("a three-valent star is Other") {
  const DessinGraph g = trace_support(poly({-1.0, 0.0, 0.0, 2.0}));
  CHECK(g.edges.size() == 3);
  CHECK(classify(g) == DessinClass::Other);
  check_invariants(g);
}

TEST_CASE("dessins through infinity") {
  const DessinGraph a = trace_support(through_infinity());
  check_invariants(a);
  CHECK(classify(a) == DessinClass::Segment);
  bool used_chart = false;
  for (const Edge& e : a.edges)
    for (const ChartPoint& p : e.polyline) used_chart = used_chart || p.chart == 1;
  CHECK(used_chart);

  const DessinGraph b = trace_support(seed_at_infinity());
  check_invariants(b);
  CHECK(classify(b) == DessinClass::Segment);
  CHECK(std::any_of(b.edges.begin(), b.edges.end(), [](const Edge& e) { return e.seed.is_infinite(); }));
  // T3(1/z) and T2(1/z) share the support 1/[-1, 1].
  CHECK(support_distance(a, b) < 1e-5);
}

TEST_CASE("invariants on further Belyi functions") {
  for (const RatFunc& f : {chebyshev(5, -1), circle_belyi(3, -1), moved_segment(), compose(chebyshev(3), circle_belyi(1)),
                           compose(circle_belyi(1), poly({0.0, 0.0, 1.0}))}) {
    REQUIRE(is_belyi(f));
    check_invariants(trace_support(f));
  }
}

TEST_CASE("support distance") {
  const DessinGraph g2 = trace_support(chebyshev(2));
  CHECK(support_distance(trace_support(chebyshev(2)), trace_support(chebyshev(3))) < 1e-6);
  CHECK(support_distance(g2, g2) < 1e-12);
  CHECK(support_distance(g2, trace_support(circle_belyi(1))) > 0.4);
}

TEST_CASE("supports_equal") {
  CHECK(supports_equal(chebyshev(2), chebyshev(5)));
  CHECK(supports_equal(circle_belyi(1), circle_belyi(3)));
  CHECK_FALSE(supports_equal(chebyshev(2), compose(chebyshev(2), circle_belyi(1))));
  for (int n : {2, 3}) CHECK(supports_equal(chebyshev(2), compose(chebyshev(n), chebyshev(2))));
  CHECK_THROWS_AS(supports_equal(chebyshev(2), RatFunc::polynomial(ComplexPoly::monomial(3))), NotBelyi);
}

TEST_CASE("stalls are reported with the seed") {
  TraceOptions o;
  o.tol = -1.0;  // the corrector can never succeed
  try {
    trace_support(chebyshev(2), o);
    FAIL("expected a stall");
  } catch (const TraceStall& e) {
    CHECK(std::abs(e.seed.value()) < 1.0);
    CHECK(std::string(e.what()).find("stalled") != std::string::npos);
  }
}

TEST_CASE("polyline CSV") {
  std::ostringstream os;
  write_polyline_csv(os, trace_support(chebyshev(1)));
  const std::string s = os.str();
  CHECK(s.rfind("edge_index,chart,x,y\n", 0) == 0);
  CHECK(s.find("0,0,-1.000000,0.000000") != std::string::npos);
  CHECK(s.find("0,0,1.000000,0.000000") != std::string::npos);
}
