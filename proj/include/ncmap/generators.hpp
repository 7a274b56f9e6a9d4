#pragma once

#include <cstdint>

#include "ncmap/cloud.hpp"

namespace ncmap {

// side*side cell centers of the unit square: ((i+0.5)/side, (j+0.5)/side),
// i outer, j inner.
point_cloud gen_grid(std::size_t side);

// Quasi-uniform filling of the ellipse x^2/a^2 + y^2/b^2 <= 1 with roughly n
// points.  Deterministic: a square lattice (i*p, j*p) is ranked by elliptical
// radius (i/a)^2 + (j/b)^2, the pitch p is fixed by the n-th smallest radius,
// and every lattice point up to that radius is kept.  The returned count lies
// in [n, n + ceil(sqrt(n))]; read it off the result.
point_cloud gen_ellipse(std::size_t n, double a, double b);

// n i.i.d. standard-normal points in dimension d.  Reproducible across
// platforms: the stream is mt19937_64(seed) mapped to (0,1] doubles (53-bit)
// and fed through the Box-Muller transform, coordinates filled row-major.
point_cloud gen_gaussian(std::size_t n, std::uint64_t seed, std::size_t d);

}  // namespace ncmap
