#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "belyi/lemniscate.hpp"

namespace belyi {
namespace {

struct Cell {
  double cx, cy, half;
};

// |log|P|| and |P'/P| at z; a pole or zero reports an always-kept cell.
bool near_level_one(const RatFunc& p, cplx z, double radius) {
  const cplx n = p.num()(z), d = p.den()(z);
  if (n == cplx{0.0} || d == cplx{0.0}) return true;
  const auto [v, dv] = p.value_and_derivative(z);
  if (!std::isfinite(std::abs(dv))) return true;
  const double l = std::abs(std::log(std::abs(v)));
  const double g = std::abs(dv / v) * radius;
  return l <= 4.0 * g + 4.0 * g * g;
}

double level_residual(const RatFunc& p1, const RatFunc& p2, cplx z) {
  const double a = std::abs(std::abs(p1.at(z)) - 1.0), b = std::abs(std::abs(p2.at(z)) - 1.0);
  return std::isfinite(a) && std::isfinite(b) ? std::max(a, b) : INFINITY;
}

// Newton on (|P1|^2 - 1, |P2|^2 - 1) with forward-difference Jacobian.
cplx fd_newton(const RatFunc& p1, const RatFunc& p2, cplx z) {
  auto g = [&](double x, double y, double& g1, double& g2) {
    g1 = std::norm(p1.at({x, y})) - 1.0;
    g2 = std::norm(p2.at({x, y})) - 1.0;
  };
  double x = z.real(), y = z.imag();
  for (int it = 0; it < 60; ++it) {
    double g1, g2;
    g(x, y, g1, g2);
    if (std::max(std::abs(g1), std::abs(g2)) < 1e-15) break;
    const double h = 1e-7 * (1.0 + std::hypot(x, y));
    double a1, a2, b1, b2;
    g(x + h, y, a1, a2);
    g(x, y + h, b1, b2);
    const double j11 = (a1 - g1) / h, j21 = (a2 - g2) / h, j12 = (b1 - g1) / h, j22 = (b2 - g2) / h;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = -(j22 * g1 - j12 * g2) / det, dy = -(-j21 * g1 + j11 * g2) / det;
    x += dx;
    y += dy;
    if (std::hypot(dx, dy) < 1e-15 * (1.0 + std::hypot(x, y))) break;
  }
  return {x, y};
}

}  // namespace

std::vector<cplx> oracle_intersect(const RatFunc& p1, const RatFunc& p2, int grid) {
  if (p1.is_constant() || p2.is_constant()) throw std::invalid_argument("oracle_intersect: constant function");
  double r = INFINITY;
  for (const RatFunc* p : {&p1, &p2}) {
    try {
      r = std::min(r, lemniscate_radius(*p));
    } catch (const std::invalid_argument&) {
    }
  }
  if (!std::isfinite(r)) throw std::invalid_argument("oracle_intersect: both lemniscates unbounded");
  r *= 1.05;

  std::vector<Cell> live;
  const double h0 = r / grid;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) live.push_back({-r + (2 * i + 1) * h0, -r + (2 * j + 1) * h0, h0});

  const double leaf = 1e-5 * r;
  while (true) {
    std::vector<Cell> kept;
    for (const Cell& c : live) {
      const cplx z{c.cx, c.cy};
      const double diag = std::sqrt(2.0) * c.half;
      if (near_level_one(p1, z, diag) && near_level_one(p2, z, diag)) kept.push_back(c);
    }
    if (kept.empty() || kept.front().half <= leaf) {
      live = std::move(kept);
      break;
    }
    if (kept.size() > 200000) throw std::runtime_error("oracle_intersect: subdivision did not localize");
    live.clear();
    for (const Cell& c : kept) {
      const double q = 0.5 * c.half;
      for (int dx : {-1, 1})
        for (int dy : {-1, 1}) live.push_back({c.cx + dx * q, c.cy + dy * q, q});
    }
  }

  // Group neighbouring leaves; polish the best member of each group.
  std::vector<int> group(live.size(), -1);
  int groups = 0;
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (group[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    group[i] = groups;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < live.size(); ++b) {
        if (group[b] >= 0) continue;
        if (std::hypot(live[a].cx - live[b].cx, live[a].cy - live[b].cy) <= 3.0 * (live[a].half + live[b].half)) {
          group[b] = groups;
          stack.push_back(b);
        }
      }
    }
    ++groups;
  }
  std::vector<cplx> out;
  for (int gi = 0; gi < groups; ++gi) {
    cplx best{};
    double best_res = INFINITY;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (group[i] != gi) continue;
      const cplx z{live[i].cx, live[i].cy};
      const double res = level_residual(p1, p2, z);
      if (res < best_res) {
        best_res = res;
        best = z;
      }
    }
    const cplx z = fd_newton(p1, p2, best);
    if (level_residual(p1, p2, z) < 1e-8) out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<cplx> dedup;
  for (const cplx& z : out)
    if (std::none_of(dedup.begin(), dedup.end(), [&](const cplx& q) { return chordal_distance(z, q) <= 1e-6; })) dedup.push_back(z);
  return dedup;
}

}  // namespace belyi
