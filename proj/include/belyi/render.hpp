#pragma once

#include <iosfwd>

#include "belyi/dessin.hpp"

namespace belyi {

struct RenderOptions {
  /// Adds an inset showing the dessin in the chart w = 1/z near infinity.
  bool sphere = false;
  int width = 800;  // pixels; the height follows the aspect ratio
};

/// SVG 1.1 drawing of the dessin: edges as black strokes, white vertices as
/// open circles and black vertices as filled ones. The viewport is the
/// bounding box of the finite samples padded by 10%; samples farther out than
/// 100 times the largest finite vertex modulus are left to the inset.
void write_svg(std::ostream& os, const DessinGraph& g, const RenderOptions& opts = {});

}  // namespace belyi
