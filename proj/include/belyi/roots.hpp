#pragma once

#include <vector>

#include "belyi/complex_poly.hpp"

namespace belyi {

/// Roots closer than this (relative to max(1, |z|)) always merge.
inline constexpr double kRootClusterRadius = 1e-7;

struct Root {
  cplx value;
  int multiplicity;
};

/// All roots of p with multiplicities summing to deg p, sorted by real then
/// imaginary part.
///
/// Simultaneous Aberth-Ehrlich iteration followed by clustering. Approximate
/// roots within kRootClusterRadius are merged outright; wider clusters (a
/// k-fold root scatters by roughly eps^(1/k)) merge only when the Taylor
/// coefficients of p at the cluster centre confirm a root of that order.
///
/// Throws std::invalid_argument for the zero polynomial.
std::vector<Root> roots(const ComplexPoly& p);

/// Raw Aberth iterates (with repetition), without clustering. Exposed for tests.
std::vector<cplx> aberth_roots(const ComplexPoly& p);

}  // namespace belyi
