#pragma once

#include <vector>

#include "belyi/sphere_point.hpp"

namespace belyi {

using SpherePolyline = std::vector<SpherePoint>;

/// Largest distance from a sample of `from` to the chords of `to`, measured
/// in the unit-sphere embedding (so agreeing with the chordal metric).
double directed_hausdorff(const std::vector<SpherePolyline>& from, const std::vector<SpherePolyline>& to);

double hausdorff_distance(const std::vector<SpherePolyline>& a, const std::vector<SpherePolyline>& b);

}  // namespace belyi
