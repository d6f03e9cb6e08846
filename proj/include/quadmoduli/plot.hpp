#pragma once

#include "quadmoduli/polygon.hpp"

#include <string>
#include <vector>

namespace quadmoduli {

// Chart window [-1.5, 2.5] x [-0.5, 3]; SVG y is the negated imaginary part.
[[nodiscard]] std::string triangle_levels_svg(const std::vector<double> &levels, int samples = 720);

// Points of every polyline in an SVG produced above, back in chart coordinates.
[[nodiscard]] std::vector<std::vector<Complex>> svg_polylines(const std::string &svg);

}  // namespace quadmoduli
