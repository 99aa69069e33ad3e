#pragma once

#include <string>
#include <vector>

#include "io.hpp"
#include "rittlab/domains.hpp"

namespace rittlab::cli {

struct Scene {
  std::vector<cplx> e;
  std::vector<PiecewiseContour> regions;   // drawn piece by piece, styled by kind
  std::vector<PiecewiseContour> contours;  // integration paths, with orientation arrows
  std::vector<std::vector<cplx>> polygons;
  std::vector<cplx> eigenvalues;
};

/// Geometry document: {"E", "stolz": [r...], "gamma": [{"s","n"}...],
/// "polygons": [[[re,im]...]...], "eigenvalues": [[re,im]...]}. A report with a
/// "geometry" member is accepted as well.
Scene scene_from(const json& geometry);

/// 1024x1024 canvas, view box [-1.3, 1.3]^2, y axis pointing up.
/// Throws EMPTY_SCENE when there is nothing but the unit circle to draw.
std::string render_svg(const Scene& scene);

}  // namespace rittlab::cli
