#pragma once

#include <optional>
#include <vector>

#include "chordgeom/body.hpp"

namespace chordgeom {

// Direction grid for the projection integrator: n = 2 uses n_circle directions on a
// half circle; n = 3 uses a hemisphere product grid (Gauss-Legendre in cos(theta)
// times midpoint azimuth); n = 4 uses the hemisphere rule with n4_theta, n4_phi,
// extrapolated against the half grid since the error there is O(h^2).
struct ProjectionConfig {
  int n_theta = 40;
  int n_phi = 80;
  int n_circle = 2048;
  int n4_theta = 16;
  int n4_phi = 32;
  bool n4_richardson = true;
  // Fixed grid pole for n = 4; by default the thinnest principal axis of the vertices.
  // Pin it when comparing nearby bodies so the grid does not move between them.
  std::optional<Vec> n4_pole;
};

Vec principal_pole(const HPolytope& P);

struct PolytopeChordData {
  double I = 0.0;
  // Per facet index; zero for redundant facets. Empty unless requested.
  std::vector<double> F;
  int directions = 0;
};

// int_T L^p over a triangle of given area, L linear with vertex values a, b, c >= 0.
double triangle_power_integral(double a, double b, double c, double area, double p);
// int_0^len L^p for L linear with end values a, b >= 0.
double segment_power_integral(double a, double b, double len, double p);

// int_S L^p over a d-simplex of given volume, L linear with the d+1 vertex values.
double simplex_power_integral(std::vector<double> values, double volume, double p);

// Exact I_q(P, u) = int_{P|u^perp} X^p dx for n in {2, 3, 4}; optional gradient in h.
double projection_directional(const HPolytope& P, const Vec& u, double p, std::vector<double>* grad = nullptr);

// I_q(P) and, optionally, F_q(P, {u_i}) = dI_q/dh_i for n in {2, 3, 4}.
PolytopeChordData projection_chord(const HPolytope& P, double q, const ProjectionConfig& cfg, bool with_measure);

}  // namespace chordgeom
