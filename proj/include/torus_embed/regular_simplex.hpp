#pragma once

#include <cstddef>

#include "torus_embed/bigint.hpp"
#include "torus_embed/geometry.hpp"
#include "torus_embed/polygon_torus.hpp"

namespace torus_embed {

// n vertices of a regular simplex with the given side, in R^(n-1). Built by
// repeatedly lifting a new vertex above the centroid of the previous ones,
// so vertex 0 is the origin.
PointSet regular_simplex(std::size_t n, double side);

// Circumradius of the regular m-gon with the given side: side / (2 sin(pi/m)).
double circumradius_for_side(const BigInt& m, double side);

// Regular simplex of side alpha on the (m, r)-regular torus T_{m,r}^n whose
// polygons have side alpha / sqrt(2). Point i sits on vertex 1 in factor i
// and on the adjacent vertex 0 everywhere else, so any two points differ in
// exactly two factors by one polygon side each.
TorusEmbedding embed_regular_simplex(std::size_t n, double alpha, const BigInt& m);

}  // namespace torus_embed
