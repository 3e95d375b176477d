#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "belyi/rat_func.hpp"
#include "belyi/support_metric.hpp"

namespace belyi {

/// White vertices are beta^-1(-1), black vertices beta^-1(1).
enum class Color { White, Black };

struct Vertex {
  SpherePoint position;
  Color color;
  int valency;
};

/// A polyline sample. Chart 0 stores z itself, chart 1 stores w = 1/z.
struct ChartPoint {
  cplx value;
  int chart;
  SpherePoint point() const;
};

struct Edge {
  std::vector<ChartPoint> polyline;  // white end, seed, black end
  int white;  // vertex indices
  int black;
  SpherePoint seed;  // the point of beta^-1(0) on this edge
};

struct DessinGraph {
  RatFunc beta;
  std::vector<Vertex> vertices;  // white first, then black
  std::vector<Edge> edges;  // ordered by seed
};

class NotBelyi : public std::invalid_argument {
 public:
  NotBelyi() : std::invalid_argument("not a Belyi function: critical values outside {-1, 1, inf}") {}
};

/// Continuation could not proceed even with the step halved below 1e-12.
class TraceStall : public std::runtime_error {
 public:
  TraceStall(SpherePoint seed, double t);
  SpherePoint seed;
  double t;
};

struct TraceOptions {
  double step = 1e-3;  // in t, and roughly the chordal sample spacing near vertices
  double tol = 1e-12;  // corrector tolerance on |beta(z) - t|
};

/// Throws NotBelyi unless is_belyi(beta).
std::vector<Vertex> vertices(const RatFunc& beta);

/// beta^-1([-1, 1]) by predictor-corrector continuation from each point of
/// beta^-1(0), once towards t = 1 and once towards t = -1.
///
/// Steps in t solve beta(z) = t with an Euler predictor dz = dt / beta' and a
/// Newton corrector. For |t| > 0.9 the predictor moves a fixed arclength along
/// the curve instead, since 1/beta' blows up at ramified vertices, and the run
/// snaps onto the nearest vertex of the target colour once within 1.5 steps
/// or on overshooting |t| = 1. The chart w = 1/z takes over beyond ten times
/// the largest finite root modulus.
///
/// Throws NotBelyi or TraceStall.
DessinGraph trace_support(const RatFunc& beta, const TraceOptions& opts = {});

enum class DessinClass { Segment, Circle, Other };

std::string to_string(DessinClass c);

/// Segment: all valencies at most 2 and the graph is a path. Circle: all
/// valencies 2 and the graph is one cycle. Anything else is Other.
DessinClass classify(const DessinGraph& g);

std::vector<SpherePolyline> sphere_polylines(const DessinGraph& g);

/// Symmetric Hausdorff distance between the traced supports.
double support_distance(const DessinGraph& g1, const DessinGraph& g2);

/// tol <= 0 selects 10 * opts.step.
bool supports_equal(const RatFunc& b1, const RatFunc& b2, double tol = 0.0, const TraceOptions& opts = {});

/// Rows "edge_index,chart,x,y" in fixed notation with 6 decimals.
void write_polyline_csv(std::ostream& os, const DessinGraph& g);

}  // namespace belyi
