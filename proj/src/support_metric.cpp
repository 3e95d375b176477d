#include "belyi/support_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace belyi {
namespace {

using Vec3 = std::array<double, 3>;

struct Segment {
  Vec3 a, b;
};

double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

double point_segment(const Vec3& p, const Segment& s) {
  const Vec3 ab{s.b[0] - s.a[0], s.b[1] - s.a[1], s.b[2] - s.a[2]};
  const Vec3 ap{p[0] - s.a[0], p[1] - s.a[1], p[2] - s.a[2]};
  const double len2 = dot(ab, ab);
  const double t = len2 > 0.0 ? std::clamp(dot(ap, ab) / len2, 0.0, 1.0) : 0.0;
  const Vec3 d{ap[0] - t * ab[0], ap[1] - t * ab[1], ap[2] - t * ab[2]};
  return std::sqrt(dot(d, d));
}

std::vector<Segment> segments(const std::vector<SpherePolyline>& lines) {
  std::vector<Segment> out;
  for (const SpherePolyline& l : lines) {
    if (l.size() == 1) out.push_back({l[0].on_sphere(), l[0].on_sphere()});
    for (std::size_t i = 1; i < l.size(); ++i) out.push_back({l[i - 1].on_sphere(), l[i].on_sphere()});
  }
  return out;
}

// Segments bucketed by midpoint on a coarse grid over [-1, 1]^3.
class SegmentGrid {
 public:
  explicit SegmentGrid(std::vector<Segment> segs) : segs_(std::move(segs)) {
    std::map<std::array<int, 3>, std::size_t> index;
    for (std::size_t k = 0; k < segs_.size(); ++k) {
      const Segment& s = segs_[k];
      Vec3 mid;
      double half2 = 0.0;
      for (int c = 0; c < 3; ++c) {
        mid[c] = 0.5 * (s.a[c] + s.b[c]);
        half2 += 0.25 * (s.b[c] - s.a[c]) * (s.b[c] - s.a[c]);
      }
      reach_ = std::max(reach_, std::sqrt(half2));
      const std::array<int, 3> key = cell_of(mid);
      auto [it, fresh] = index.try_emplace(key, cells_.size());
      if (fresh) cells_.push_back({key, {}});
      cells_[it->second].members.push_back(k);
    }
  }

  bool empty() const { return segs_.empty(); }

  // Distance from p to the nearest segment, or any value not above
  // good_enough once one that close is found. hint is the index of the
  // segment last found nearest; consecutive samples usually share it.
  double nearest(const Vec3& p, double good_enough, std::size_t& hint) const {
    double best = std::numeric_limits<double>::infinity();
    auto visit = [&](std::size_t k) {
      const double d = point_segment(p, segs_[k]);
      if (d < best) {
        best = d;
        hint = k;
      }
    };
    const std::size_t n = segs_.size();
    for (std::size_t off = 0; off <= 4 && off < n; ++off) {
      visit((hint + off) % n);
      visit((hint + n - off) % n);
    }
    if (best <= good_enough) return best;

    order_.clear();
    for (std::size_t c = 0; c < cells_.size(); ++c) order_.push_back({lower_bound(p, cells_[c].key), c});
    std::sort(order_.begin(), order_.end());
    for (const auto& [lb, c] : order_) {
      if (lb >= best) break;
      for (std::size_t k : cells_[c].members) visit(k);
      if (best <= good_enough) break;
    }
    return best;
  }

 private:
  static constexpr double kCell = 1.0 / 16.0;

  struct Cell {
    std::array<int, 3> key;
    std::vector<std::size_t> members;
  };

  static std::array<int, 3> cell_of(const Vec3& p) {
    return {static_cast<int>(std::floor(p[0] / kCell)), static_cast<int>(std::floor(p[1] / kCell)),
            static_cast<int>(std::floor(p[2] / kCell))};
  }

  // No segment with its midpoint in the cell comes closer than this.
  double lower_bound(const Vec3& p, const std::array<int, 3>& key) const {
    double d2 = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double lo = key[c] * kCell, hi = lo + kCell;
      const double e = p[c] < lo ? lo - p[c] : (p[c] > hi ? p[c] - hi : 0.0);
      d2 += e * e;
    }
    return std::max(0.0, std::sqrt(d2) - reach_);
  }

  std::vector<Segment> segs_;
  std::vector<Cell> cells_;
  double reach_ = 0.0;
  mutable std::vector<std::pair<double, std::size_t>> order_;
};

}  // namespace

double directed_hausdorff(const std::vector<SpherePolyline>& from, const std::vector<SpherePolyline>& to) {
  const SegmentGrid grid(segments(to));
  if (grid.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::size_t hint = 0;
  // A sparse first pass raises the running maximum early, so that most
  // samples of the full pass stop at the hint.
  for (std::size_t stride : {std::size_t{64}, std::size_t{1}})
    for (const SpherePolyline& l : from)
      for (std::size_t k = 0; k < l.size(); k += stride) worst = std::max(worst, grid.nearest(l[k].on_sphere(), worst, hint));
  return worst;
}

double hausdorff_distance(const std::vector<SpherePolyline>& a, const std::vector<SpherePolyline>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace belyi
