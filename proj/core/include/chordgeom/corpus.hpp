#pragma once

#include <cstdint>

#include "chordgeom/body.hpp"

namespace chordgeom {

// Random polytope with up to m facets, all active, origin interior.
// Facets that come out redundant are dropped, so size() may be < m.
HPolytope random_polytope(int n, int m, std::uint64_t seed, std::uint64_t index);

// Origin-symmetric polytope with up to `pairs` antipodal facet pairs.
HPolytope random_symmetric_polytope(int n, int pairs, std::uint64_t seed, std::uint64_t index);

// Symmetric polytope with facets at +-e_i, a pair inside a coordinate plane and a few
// random pairs, so coordinate subspaces carry mass.
HPolytope random_aligned_symmetric_polytope(int n, std::uint64_t seed, std::uint64_t index);

// Axis-aligned box [-w_1, w_1] x ... x [-w_n, w_n].
HPolytope box(const Vec& half_widths);
HPolytope cube(int n, double half_width = 1.0);

// Axis-aligned ellipsoid with ascending axes drawn from [lo, 1].
Ellipsoid random_ellipsoid(int n, double lo, std::uint64_t seed, std::uint64_t index);

}  // namespace chordgeom
