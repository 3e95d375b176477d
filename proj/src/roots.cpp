#include "belyi/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace belyi {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAberthIterations = 800;
// Taylor coefficients of a confirmed k-fold root sit at rounding level.
constexpr double kMultiplicityTol = 1e-10;

struct Correction {
  cplx step;
  bool converged;
};

// Newton correction p/p' with the rounding-level stopping test. For |z| > 1
// the reversed polynomial is used so that Horner stays bounded.
Correction newton_correction(const std::vector<cplx>& a, cplx z) {
  const int n = static_cast<int>(a.size()) - 1;
  const double r = std::abs(z);
  if (r <= 1.0) {
    cplx p{0.0}, dp{0.0};
    double bound = 0.0;
    for (int k = n; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + a[static_cast<std::size_t>(k)];
      bound = bound * r + std::abs(a[static_cast<std::size_t>(k)]);
    }
    const bool conv = std::abs(p) <= 4.0 * n * kEps * bound;
    if (dp == cplx{0.0}) return {cplx{0.0}, conv};
    return {p / dp, conv};
  }
  const cplx w = 1.0 / z;
  const double rw = 1.0 / r;
  cplx q{0.0}, dq{0.0};
  double bound = 0.0;
  for (int k = 0; k <= n; ++k) {  // reversed coefficients b_j = a_{n-j}, Horner from b_n = a_0
    dq = dq * w + q;
    q = q * w + a[static_cast<std::size_t>(k)];
    bound = bound * rw + std::abs(a[static_cast<std::size_t>(k)]);
  }
  const bool conv = std::abs(q) <= 4.0 * n * kEps * bound;
  const cplx denom = static_cast<double>(n) * q - w * dq;
  if (denom == cplx{0.0}) return {cplx{0.0}, conv};
  return {z * q / denom, conv};
}

// Initial guesses on circles read off the upper convex hull of (k, log|a_k|).
std::vector<cplx> initial_guesses(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<int> hull;
  std::vector<double> lg(a.size());
  for (int k = 0; k <= n; ++k) {
    const double m = std::abs(a[static_cast<std::size_t>(k)]);
    lg[static_cast<std::size_t>(k)] = m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity();
  }
  for (int k = 0; k <= n; ++k) {
    if (!std::isfinite(lg[static_cast<std::size_t>(k)])) continue;
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2], j = hull.back();
      const double cross = (j - i) * (lg[static_cast<std::size_t>(k)] - lg[static_cast<std::size_t>(i)]) -
                           (k - i) * (lg[static_cast<std::size_t>(j)] - lg[static_cast<std::size_t>(i)]);
      if (cross >= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  std::vector<cplx> z;
  z.reserve(static_cast<std::size_t>(n));
  const double offset = 0.4;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int i = hull[h], j = hull[h + 1];
    const double radius = std::exp((lg[static_cast<std::size_t>(i)] - lg[static_cast<std::size_t>(j)]) / (j - i));
    for (int m = 0; m < j - i; ++m) {
      const double ang = 2.0 * std::numbers::pi * m / (j - i) + 2.0 * std::numbers::pi * i / n + offset;
      z.push_back(std::polar(radius, ang));
    }
  }
  return z;
}

std::vector<cplx> aberth(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 1) return {-a[0] / a[1]};
  std::vector<cplx> z = initial_guesses(a);
  std::vector<bool> done(z.size(), false);
  for (int it = 0; it < kMaxAberthIterations; ++it) {
    bool all = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      const Correction c = newton_correction(a, z[k]);
      if (c.converged) {
        done[k] = true;
        continue;
      }
      all = false;
      cplx sum{0.0};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == k) continue;
        const cplx d = z[k] - z[j];
        if (d != cplx{0.0}) sum += 1.0 / d;
      }
      const cplx denom = 1.0 - c.step * sum;
      const cplx w = denom == cplx{0.0} ? c.step : c.step / denom;
      z[k] -= w;
      if (std::abs(w) <= kEps * std::abs(z[k])) done[k] = true;
    }
    if (all) break;
  }
  return z;
}

struct Atom {
  cplx c;
  int m;
};

double rel_scale(cplx a, cplx b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

bool confirms_root_of_order(const ComplexPoly& p, const ComplexPoly& absp, cplx c, int m) {
  const std::vector<cplx> t = p.taylor_at(c);
  const std::vector<cplx> s = absp.taylor_at(cplx{std::abs(c)});
  for (int j = 0; j < m && j < static_cast<int>(t.size()); ++j) {
    if (std::abs(t[static_cast<std::size_t>(j)]) > kMultiplicityTol * std::abs(s[static_cast<std::size_t>(j)])) return false;
  }
  return true;
}

// Newton on p^(m-1), whose root at an m-fold root of p is simple.
cplx polish_center(const ComplexPoly& p, cplx c, int m, double max_move) {
  ComplexPoly d = p;
  for (int k = 0; k < m - 1; ++k) d = d.derivative();
  const ComplexPoly dd = d.derivative();
  cplx z = c;
  double best = std::abs(d(c));
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    const cplx den = dd(z);
    if (den == cplx{0.0}) break;
    const cplx next = z - d(z) / den;
    const double r = std::abs(d(next));
    if (!(r < best) || std::abs(next - c) > max_move) break;
    best = r;
    z = next;
  }
  return z;
}

// Single-linkage groups of atoms within radius (relative to max(1,|z|)).
std::vector<std::vector<std::size_t>> link_groups(const std::vector<Atom>& atoms, double radius) {
  const std::size_t n = atoms.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(atoms[i].c - atoms[j].c) < radius * rel_scale(atoms[i].c, atoms[j].c)) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return groups;
}

Atom merge(const std::vector<Atom>& atoms, const std::vector<std::size_t>& g) {
  cplx sum{0.0};
  int m = 0;
  for (std::size_t i : g) {
    sum += static_cast<double>(atoms[i].m) * atoms[i].c;
    m += atoms[i].m;
  }
  return {sum / static_cast<double>(m), m};
}

std::vector<Root> cluster(const ComplexPoly& p, const std::vector<cplx>& approx) {
  std::vector<Atom> atoms;
  atoms.reserve(approx.size());
  for (const cplx& z : approx) atoms.push_back({z, 1});

  std::vector<cplx> absc;
  for (const cplx& c : p.coeffs()) absc.emplace_back(std::abs(c));
  const ComplexPoly absp(absc);

  const double radii[] = {kRootClusterRadius, 1e-6, 1e-5, 1e-4, 1e-3};
  for (std::size_t level = 0; level < std::size(radii); ++level) {
    const double radius = radii[level];
    std::vector<Atom> next;
    for (const auto& g : link_groups(atoms, radius)) {
      if (g.size() == 1) {
        next.push_back(atoms[g[0]]);
        continue;
      }
      Atom merged = merge(atoms, g);
      const double span = radius * std::max(1.0, std::abs(merged.c)) * static_cast<double>(g.size());
      merged.c = polish_center(p, merged.c, merged.m, span);
      if (level == 0 || confirms_root_of_order(p, absp, merged.c, merged.m)) {
        next.push_back(merged);
      } else {
        for (std::size_t i : g) next.push_back(atoms[i]);
      }
    }
    atoms = std::move(next);
  }

  std::vector<Root> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back({a.c, a.m});
  return out;
}

void polish_simple(const ComplexPoly& p, std::vector<Root>& rs) {
  const ComplexPoly dp = p.derivative();
  for (Root& r : rs) {
    if (r.multiplicity != 1) continue;
    for (int it = 0; it < 3; ++it) {
      const cplx d = dp(r.value);
      if (d == cplx{0.0}) break;
      const cplx next = r.value - p(r.value) / d;
      if (std::abs(p(next)) < std::abs(p(r.value))) r.value = next;
      else break;
    }
  }
}

}  // namespace

std::vector<cplx> aberth_roots(const ComplexPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no root set");
  const auto& c = p.coeffs();
  const double cut = kCoeffPruneTol * p.max_abs();
  std::size_t zeros = 0;
  while (zeros < c.size() - 1 && std::abs(c[zeros]) <= cut) ++zeros;
  std::vector<cplx> out(zeros, cplx{0.0});
  std::vector<cplx> rest(c.begin() + static_cast<long>(zeros), c.end());
  if (rest.size() > 1) {
    const std::vector<cplx> z = aberth(rest);
    out.insert(out.end(), z.begin(), z.end());
  }
  return out;
}

std::vector<Root> roots(const ComplexPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no root set");
  if (p.degree() == 0) return {};
  const auto& c = p.coeffs();
  const double cut = kCoeffPruneTol * p.max_abs();
  std::size_t zeros = 0;
  while (zeros < c.size() - 1 && std::abs(c[zeros]) <= cut) ++zeros;

  std::vector<cplx> rest(c.begin() + static_cast<long>(zeros), c.end());
  std::vector<Root> out;
  if (rest.size() > 1) {
    const ComplexPoly q(rest);
    out = cluster(q, aberth(rest));
    polish_simple(q, out);
  }
  if (zeros > 0) {
    out.push_back({cplx{0.0}, static_cast<int>(zeros)});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace belyi
