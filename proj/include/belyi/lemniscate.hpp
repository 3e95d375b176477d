#pragma once

#include <optional>
#include <vector>

#include "belyi/bivar_poly.hpp"
#include "belyi/rat_func.hpp"

namespace belyi {

/// F(x, y) = |num(x+iy)|^2 - |den(x+iy)|^2, vanishing exactly on |P| = 1.
RealBivar realify(const RatFunc& p);

/// A radius outside which |P| stays away from 1. Requires |P(inf)| != 1;
/// throws std::invalid_argument otherwise.
double lemniscate_radius(const RatFunc& p);

struct IntersectOptions {
  /// Both lemniscates contain the unit circle; solve for the remaining
  /// components after dividing it out.
  bool shared_unit_circle = false;
};

struct IntersectionReport {
  std::vector<cplx> points;  // sorted by real, then imaginary part
  std::vector<double> residuals;  // max(||P1|-1|, ||P2|-1|) per point
  std::optional<int> count;  // empty when the intersection is infinite
  int bound_quadratic = 0;  // (n1 + n2)^2
  int bound_sharp = 0;  // 2 n1 n2
  bool degenerate = false;
};

/// Points with |P1| = |P2| = 1 in the finite plane.
///
/// The y-resultant of the realified curves is sampled at 2E+1 points of a
/// circle (E the Bezout number), its coefficients recovered by a discrete
/// Fourier transform and its real roots back-substituted. Candidates are
/// polished by damped Newton on (F1, F2) and kept when both residuals are
/// below 1e-8. A resultant vanishing at every sample marks a shared
/// component; the report is then degenerate with no points.
///
/// When |Pi(inf)| is within 1e-3 of 1 the problem is first moved by a
/// disk automorphism so that the curves stay bounded; a point mapped back
/// to infinity is dropped.
///
/// Throws std::invalid_argument for constant input.
IntersectionReport intersect(const RatFunc& p1, const RatFunc& p2, const IntersectOptions& opts = {});

struct BoundCheck {
  bool within_quadratic;
  bool within_sharp;
};

/// Throws std::domain_error("infinite intersection") on a degenerate report.
BoundCheck check_bounds(const IntersectionReport& r);

/// Independent subdivision search for the same point set.
///
/// Scans a grid x grid cover of the disk of lemniscate_radius, keeps cells
/// where both |log|Pi|| are small relative to |Pi'/Pi| times the cell size,
/// refines down to 1e-5 of the radius and polishes with a finite-difference
/// Newton step.
std::vector<cplx> oracle_intersect(const RatFunc& p1, const RatFunc& p2, int grid = 64);

}  // namespace belyi
