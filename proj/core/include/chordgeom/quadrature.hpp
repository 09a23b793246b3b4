#pragma once

#include <cstdint>
#include <vector>

#include "chordgeom/common.hpp"

namespace chordgeom {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre on [a, b].
Rule1D gauss_legendre(int k, double a = -1.0, double b = 1.0);
// Nodes/weights for int_0^1 (1-t)^alpha t^beta f(t) dt (Golub-Welsch).
Rule1D gauss_jacobi01(int k, double alpha, double beta);

enum class SphereScheme { ProductGrid, MonteCarlo };

struct SphereQuadrature {
  SphereScheme scheme = SphereScheme::ProductGrid;
  int n = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;
  std::uint64_t seed = 0;
  int n_theta = 0;
  int n_phi = 0;

  int size() const { return static_cast<int>(nodes.size()); }
  double total_weight() const;

  // Gauss-Legendre in each polar angle, trapezoid in the azimuth.
  static SphereQuadrature product_grid(int n, int n_theta, int n_phi);
  // N/2 Gaussian directions and their antipodes, weight n*omega_n/N each.
  static SphereQuadrature monte_carlo(int n, int N, std::uint64_t seed);
  // Product grid for n <= 3, Monte Carlo otherwise.
  static SphereQuadrature default_for(int n, std::uint64_t seed = 0);
};

struct HemisphereRule {
  std::vector<Vec> nodes;
  std::vector<double> weights;
  // Cosine of the angle to the pole for each node.
  std::vector<double> t;
};

// Orthonormal basis of the complement of p (columns), p assumed unit.
Mat orthonormal_complement(const Vec& p);

// Plain product rule on {u : u.p >= 0}; weights integrate du.
HemisphereRule hemisphere_grid(const Vec& p, int n_theta, int n_phi);
// Weights integrate t^beta du with t = u.p, so sum_k w_k f(u_k) ~ int t^beta f du.
HemisphereRule jacobi_hemisphere(const Vec& p, double beta, int n_t, int n_theta, int n_phi);

// Reference rule on the standard d-simplex: barycentric points and weights summing to 1.
struct SimplexRule {
  int d = 0;
  std::vector<Vec> bary;
  std::vector<double> w;
};

// Conical-product rule; `layers` geometric subdivisions (ratio 1/2) toward the face
// opposite corner 0.
SimplexRule conical_simplex_rule(int d, int k, int layers = 0);

}  // namespace chordgeom
