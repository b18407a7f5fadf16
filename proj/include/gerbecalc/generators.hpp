#ifndef GERBECALC_GENERATORS_HPP
#define GERBECALC_GENERATORS_HPP

#include "gerbecalc/complex.hpp"

namespace gerbecalc {

/// Icosahedron boundary, each triangle 4-split `level` times, oriented outward.
MeshDescription icosphere_mesh(int level);

/// n x m periodic grid, each square split along its diagonal (n, m >= 3).
MeshDescription torus_mesh(int n, int m);

/// n x n x n periodic grid, each cube split into six tetrahedra around its
/// main diagonal (n >= 3).
MeshDescription torus3_mesh(int n);

}  // namespace gerbecalc

#endif
