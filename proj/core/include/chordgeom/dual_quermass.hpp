#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chordgeom/body.hpp"
#include "chordgeom/quadrature.hpp"
#include "chordgeom/rng.hpp"

namespace chordgeom {

enum class PointLocation { Interior, Boundary, Outside };

PointLocation locate(const Body& K, const Vec& z);

// (1/n) int rho_{K,z}(u)^q du.
double dual_v(const Body& K, const Vec& z, double q, const SphereQuadrature& quad);

// Boundary evaluation with a hemisphere rule about the inward normal. When `jacobi`
// is set the rule weights already carry t^q and the integrand is (rho/t)^q.
double boundary_dual_v(const Body& K, const Vec& z, double q, const HemisphereRule& rule, bool jacobi);

// Hemisphere rule sized from a sphere quadrature, adapted to the body at z.
HemisphereRule boundary_rule(const Body& K, const Vec& z, double q, int n_theta, int n_phi, bool& jacobi);

struct SignedDualV {
  double plus = 0.0;
  double minus = 0.0;
  double value() const { return plus - minus; }
};

SignedDualV dual_v_signed(const Body& K, const Vec& z, double q, const SphereQuadrature& quad);
SignedDualV dual_v_signed(const Body& K, const Vec& z, double q);

struct MCValue {
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
  bool integrability_warning = false;
};

// (q/n) int_K |x - z|^{q-n} dx by uniform sampling in K.
MCValue riesz_dual_v(const Body& K, const Vec& z, double q, long N, std::uint64_t seed);

struct CurvatureFit {
  double estimate = 0.0;
  double fit_residual = 0.0;
  std::vector<double> q;
  std::vector<double> values;
};

// Extrapolates q * dual_v(K, z, q - 1) to q = 0 with an affine fit in q.
CurvatureFit mean_curvature_limit(const Body& K, const Vec& z, const std::vector<double>& q_seq,
                                  double max_residual = 0.02, int n_t = 48, int n_phi = 64);

// Closed forms for the unit ball B^n.
double ball_boundary_dual_v(int n, double q);

// Uniform point in K (rejection in the bounding box for polytopes).
Vec sample_uniform(const Body& K, std::mt19937_64& g);

}  // namespace chordgeom
