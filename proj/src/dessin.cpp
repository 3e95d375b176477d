#include "belyi/dessin.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "belyi/maps.hpp"
#include "belyi/roots.hpp"

namespace belyi {
namespace {

constexpr double kArcPhase = 0.9;
constexpr double kMinStep = 1e-12;

std::optional<cplx> chart_coord(const SpherePoint& p, int chart) {
  if (chart == 0) return p.is_finite() ? std::optional<cplx>(p.value()) : std::nullopt;
  if (p.is_infinite()) return cplx{0.0};
  if (p.value() == cplx{0.0}) return std::nullopt;
  return 1.0 / p.value();
}

class Tracer {
 public:
  Tracer(const RatFunc& beta, const std::vector<Vertex>& verts, double switch_radius, const TraceOptions& opts)
      : g_{beta, in_chart_at_infinity(beta)}, verts_(verts), radius_(switch_radius), opts_(opts) {}

  struct Run {
    std::vector<ChartPoint> points;
    int vertex;
  };

  Run run(ChartPoint cur, double sigma, const SpherePoint& seed) const {
    const Color target = sigma > 0 ? Color::Black : Color::White;
    std::vector<ChartPoint> pts{cur};
    double t = 0.0, h = opts_.step;

    while (sigma * t < kArcPhase) {
      const double tn = sigma * std::min(sigma * t + h, kArcPhase);
      const auto [v, dv] = g_[cur.chart].value_and_derivative(cur.value);
      const cplx du = (tn - v) / dv;
      const double cap = opts_.step * (1.0 + std::norm(cur.value));
      if (!std::isfinite(std::abs(du))) throw TraceStall(seed, t);
      if (std::abs(du) > cap) {
        h *= 0.9 * cap / std::abs(du);
        if (h < kMinStep) throw TraceStall(seed, t);
        continue;
      }
      const cplx pred = cur.value + du;
      const std::optional<cplx> u = correct(cur.chart, pred, tn);
      if (!u || std::abs(*u - pred) > 0.5 * std::abs(du) + 1e-14) {
        h *= 0.5;
        if (h < kMinStep) throw TraceStall(seed, t);
        continue;
      }
      cur.value = *u;
      t = tn;
      pts.push_back(cur);
      switch_chart(cur);
      h = std::min(opts_.step, 2.0 * h);
    }

    double arc = opts_.step;
    for (long guard = 0; guard < 100000000; ++guard) {
      const double ha = arc * 0.5 * (1.0 + std::norm(cur.value));
      const auto [vi, dist] = nearest(cur, target);
      if (vi >= 0 && dist < 1.5 * ha) return finish(pts, cur.chart, vi);
      const auto [v, dv] = g_[cur.chart].value_and_derivative(cur.value);
      if (dv == cplx{0.0} || !std::isfinite(std::abs(dv))) throw TraceStall(seed, t);
      const cplx pred = cur.value + ha * sigma * std::conj(dv) / std::abs(dv);
      const double tau = g_[cur.chart].at(pred).real();
      if (sigma * tau >= 1.0) {
        if (vi >= 0 && dist < 10.0 * ha) return finish(pts, cur.chart, vi);
        arc *= 0.5;
        if (arc < kMinStep) throw TraceStall(seed, t);
        continue;
      }
      const std::optional<cplx> u = correct(cur.chart, pred, tau);
      if (!u || std::abs(*u - pred) > 0.5 * ha) {
        arc *= 0.5;
        if (arc < kMinStep) throw TraceStall(seed, t);
        continue;
      }
      cur.value = *u;
      t = tau;
      pts.push_back(cur);
      switch_chart(cur);
      arc = std::min(opts_.step, 2.0 * arc);
    }
    throw TraceStall(seed, t);
  }

 private:
  std::optional<cplx> correct(int chart, cplx u, double target) const {
    for (int it = 0; it < 20; ++it) {
      const auto [v, dv] = g_[chart].value_and_derivative(u);
      if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(dv))) return std::nullopt;
      if (std::abs(v - target) <= opts_.tol) return u;
      if (dv == cplx{0.0}) return std::nullopt;
      u -= (v - target) / dv;
    }
    return std::nullopt;
  }

  void switch_chart(ChartPoint& p) const {
    if (p.chart == 0 && std::abs(p.value) > radius_) p = {1.0 / p.value, 1};
    else if (p.chart == 1 && std::abs(p.value) > 2.0 / radius_) p = {1.0 / p.value, 0};
  }

  std::pair<int, double> nearest(const ChartPoint& p, Color c) const {
    int best = -1;
    double d = INFINITY;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (verts_[i].color != c) continue;
      const std::optional<cplx> q = chart_coord(verts_[i].position, p.chart);
      if (!q) continue;
      if (std::abs(*q - p.value) < d) {
        d = std::abs(*q - p.value);
        best = static_cast<int>(i);
      }
    }
    return {best, d};
  }

  Run finish(std::vector<ChartPoint>& pts, int chart, int vi) const {
    pts.push_back({*chart_coord(verts_[static_cast<std::size_t>(vi)].position, chart), chart});
    return {std::move(pts), vi};
  }

  RatFunc g_[2];
  const std::vector<Vertex>& verts_;
  double radius_;
  TraceOptions opts_;
};

double max_root_modulus(const RatFunc& beta) {
  double m = 1.0;
  for (const ComplexPoly& p : {beta.num(), beta.den(), beta.num() + beta.den(), beta.num() - beta.den()}) {
    if (p.is_zero() || p.degree() < 1) continue;
    for (const Root& r : roots(p)) m = std::max(m, std::abs(r.value));
  }
  return m;
}

void append_vertices(std::vector<Vertex>& out, const ComplexPoly& p, int degree, Color c) {
  if (p.degree() >= 1)
    for (const Root& r : roots(p)) out.push_back({SpherePoint(r.value), c, r.multiplicity});
  if (p.degree() < degree) out.push_back({SpherePoint::infinity(), c, degree - std::max(p.degree(), 0)});
}

}  // namespace

SpherePoint ChartPoint::point() const {
  if (chart == 0) return SpherePoint(value);
  if (value == cplx{0.0}) return SpherePoint::infinity();
  return SpherePoint(1.0 / value);
}

TraceStall::TraceStall(SpherePoint s, double tt)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "continuation stalled on the edge seeded at " << s << " near t = " << tt;
        return os.str();
      }()),
      seed(s),
      t(tt) {}

std::vector<Vertex> vertices(const RatFunc& beta) {
  if (beta.is_constant() || !is_belyi(beta)) throw NotBelyi();
  std::vector<Vertex> out;
  append_vertices(out, beta.num() + beta.den(), beta.degree(), Color::White);
  append_vertices(out, beta.num() - beta.den(), beta.degree(), Color::Black);
  return out;
}

DessinGraph trace_support(const RatFunc& beta, const TraceOptions& opts) {
  DessinGraph g{beta, vertices(beta), {}};
  const double radius = 10.0 * max_root_modulus(beta);

  std::vector<ChartPoint> seeds;
  std::vector<SpherePoint> seed_points;
  if (beta.num().degree() >= 1)
    for (const Root& r : roots(beta.num())) {
      seeds.push_back({r.value, 0});
      seed_points.push_back(SpherePoint(r.value));
    }
  if (beta.num().degree() < beta.den().degree()) {
    seeds.push_back({0.0, 1});
    seed_points.push_back(SpherePoint::infinity());
  }

  const Tracer tracer(beta, g.vertices, radius, opts);
  std::vector<std::future<Edge>> jobs;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      Tracer::Run w = tracer.run(seeds[i], -1.0, seed_points[i]);
      Tracer::Run b = tracer.run(seeds[i], 1.0, seed_points[i]);
      Edge e;
      e.polyline.assign(w.points.rbegin(), w.points.rend());
      e.polyline.insert(e.polyline.end(), b.points.begin() + 1, b.points.end());
      e.white = w.vertex;
      e.black = b.vertex;
      e.seed = seed_points[i];
      return e;
    }));
  }
  for (auto& j : jobs) g.edges.push_back(j.get());
  return g;
}

std::string to_string(DessinClass c) {
  switch (c) {
    case DessinClass::Segment: return "Segment";
    case DessinClass::Circle: return "Circle";
    case DessinClass::Other: return "Other";
  }
  return "Other";
}

DessinClass classify(const DessinGraph& g) {
  const std::size_t nv = g.vertices.size(), ne = g.edges.size();
  if (nv == 0 || ne == 0) return DessinClass::Other;
  std::vector<int> degree(nv, 0), parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    return a;
  };
  for (const Edge& e : g.edges) {
    ++degree[static_cast<std::size_t>(e.white)];
    ++degree[static_cast<std::size_t>(e.black)];
    parent[static_cast<std::size_t>(find(e.white))] = find(e.black);
  }
  for (std::size_t i = 0; i < nv; ++i)
    if (find(static_cast<int>(i)) != find(0)) return DessinClass::Other;
  const int maxdeg = *std::max_element(degree.begin(), degree.end());
  if (maxdeg <= 2 && ne + 1 == nv) return DessinClass::Segment;
  if (std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; }) && ne == nv) return DessinClass::Circle;
  return DessinClass::Other;
}

std::vector<SpherePolyline> sphere_polylines(const DessinGraph& g) {
  std::vector<SpherePolyline> out;
  for (const Edge& e : g.edges) {
    SpherePolyline l;
    l.reserve(e.polyline.size());
    for (const ChartPoint& p : e.polyline) l.push_back(p.point());
    out.push_back(std::move(l));
  }
  return out;
}

double support_distance(const DessinGraph& g1, const DessinGraph& g2) {
  return hausdorff_distance(sphere_polylines(g1), sphere_polylines(g2));
}

bool supports_equal(const RatFunc& b1, const RatFunc& b2, double tol, const TraceOptions& opts) {
  if (tol <= 0.0) tol = 10.0 * opts.step;
  auto f1 = std::async(std::launch::async, [&] { return trace_support(b1, opts); });
  const DessinGraph g2 = trace_support(b2, opts);
  return support_distance(f1.get(), g2) < tol;
}

void write_polyline_csv(std::ostream& os, const DessinGraph& g) {
  // Values that round to zero are printed without a sign.
  auto clean = [](double v) { return std::abs(v) < 5e-7 ? 0.0 : v; };
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << "edge_index,chart,x,y\n" << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (const ChartPoint& p : g.edges[i].polyline)
      os << i << ',' << p.chart << ',' << clean(p.value.real()) << ',' << clean(p.value.imag()) << '\n';
  os.flags(flags);
  os.precision(prec);
}

}  // namespace belyi
