#pragma once

#include <functional>

#include "mhduq/mesh/tri_mesh.hpp"

namespace mhduq::mesh {

/// Structured right-diagonal triangulation of the rectangle spanned by `lo` and
/// `hi` with n cells per side: 2n^2 triangles, (n+1)^2 vertices. Every side is
/// tagged `wall`; use retag_boundary() to mark e.g. the cavity lid.
TriMesh generate_square(int n, Point lo = {0.0, 0.0}, Point hi = {1.0, 1.0});

/// Channel [0,40]x[0,10] minus the unit step [5,6]x[0,1] on the lower wall,
/// with `resolution` cells per unit length. Tags: inflow at x=0, outflow at
/// x=40, wall elsewhere (step faces included).
TriMesh generate_step_channel(int resolution);

/// Splits every triangle into three by joining its barycenter to its vertices.
TriMesh barycentric_refine(const TriMesh& mesh);

/// Returns a copy whose boundary tags are replaced by `retag(edge midpoint, old tag)`.
TriMesh retag_boundary(const TriMesh& mesh,
                       const std::function<BoundaryTag(const Point&, BoundaryTag)>& retag);

}  // namespace mhduq::mesh
