#include "belyi/render.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace belyi {
namespace {

struct Box {
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  void add(cplx z) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  bool empty() const { return !(x0 <= x1); }
  void pad() {
    double w = x1 - x0, h = y1 - y0;
    if (w <= 0.0 && h <= 0.0) w = h = 2.0;
    if (w <= 0.0) w = h;
    if (h <= 0.0) h = w;
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    x0 = cx - 0.6 * w;
    x1 = cx + 0.6 * w;
    y0 = cy - 0.6 * h;
    y1 = cy + 0.6 * h;
  }
};

// Maps one chart of the sphere into a pixel rectangle.
struct Panel {
  std::function<std::optional<cplx>(const SpherePoint&)> coord;
  Box box;
  double px, py, pw, ph;

  cplx to_pixels(cplx z) const {
    return {px + (z.real() - box.x0) / (box.x1 - box.x0) * pw, py + (box.y1 - z.imag()) / (box.y1 - box.y0) * ph};
  }
};

void draw(std::ostream& os, const Panel& p, const DessinGraph& g, double stroke, double radius) {
  for (const Edge& e : g.edges) {
    std::ostringstream path;
    path << std::fixed << std::setprecision(3);
    bool open = false;
    for (const ChartPoint& cp : e.polyline) {
      const std::optional<cplx> z = p.coord(cp.point());
      if (!z) {
        open = false;
        continue;
      }
      const cplx q = p.to_pixels(*z);
      path << (open ? " L" : (path.tellp() > 0 ? " M" : "M")) << q.real() << ',' << q.imag();
      open = true;
    }
    if (path.tellp() > 0)
      os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\"/>\n";
  }
  for (const Vertex& v : g.vertices) {
    const std::optional<cplx> z = p.coord(v.position);
    if (!z) continue;
    const cplx q = p.to_pixels(*z);
    os << "<circle cx=\"" << q.real() << "\" cy=\"" << q.imag() << "\" r=\"" << radius << "\" fill=\""
       << (v.color == Color::White ? "white" : "black") << "\" stroke=\"black\" stroke-width=\"" << stroke << "\"/>\n";
  }
}

}  // namespace

void write_svg(std::ostream& os, const DessinGraph& g, const RenderOptions& opts) {
  double vmax = 1.0;
  for (const Vertex& v : g.vertices)
    if (v.position.is_finite()) vmax = std::max(vmax, std::abs(v.position.value()));
  const double clip = 100.0 * vmax;

  Panel main;
  main.coord = [clip](const SpherePoint& s) -> std::optional<cplx> {
    if (s.is_infinite() || std::abs(s.value()) > clip) return std::nullopt;
    return s.value();
  };
  for (const Edge& e : g.edges)
    for (const ChartPoint& cp : e.polyline)
      if (const auto z = main.coord(cp.point())) main.box.add(*z);
  for (const Vertex& v : g.vertices)
    if (const auto z = main.coord(v.position)) main.box.add(*z);
  if (main.box.empty()) main.box.add(0.0);
  main.box.pad();

  const double w = opts.width;
  const double h = std::round(w * (main.box.y1 - main.box.y0) / (main.box.x1 - main.box.x0));
  main.px = main.py = 0.0;
  main.pw = w;
  main.ph = h;
  const double stroke = std::max(1.0, w / 400.0), radius = std::max(3.0, w / 100.0);

  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::fixed << std::setprecision(3);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  draw(os, main, g, stroke, radius);

  if (opts.sphere) {
    // The inset shows |w| <= 2 in w = 1/z, in the top right corner.
    Panel inset;
    inset.coord = [](const SpherePoint& s) -> std::optional<cplx> {
      if (s.is_infinite()) return cplx{0.0};
      if (std::abs(s.value()) < 0.5) return std::nullopt;
      return 1.0 / s.value();
    };
    inset.box.add({-2.0, -2.0});
    inset.box.add({2.0, 2.0});
    const double side = 0.3 * std::min(w, h);
    inset.px = w - side - 4.0;
    inset.py = 4.0;
    inset.pw = inset.ph = side;
    os << "<g class=\"inset\">\n"
       << "<rect x=\"" << inset.px << "\" y=\"" << inset.py << "\" width=\"" << side << "\" height=\"" << side
       << "\" fill=\"white\" stroke=\"gray\"/>\n";
    draw(os, inset, g, stroke, 0.6 * radius);
    os << "</g>\n";
  }
  os << "</svg>\n";
  os.flags(flags);
  os.precision(prec);
}

}  // namespace belyi
