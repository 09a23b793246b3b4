#pragma once

#include <vector>

#include "chordgeom/body.hpp"
#include "chordgeom/projection.hpp"

namespace chordgeom {

struct Atom {
  Vec u;
  double mass = 0.0;
};

struct DiscreteSphericalMeasure {
  int dim = 0;
  std::vector<Atom> atoms;
  double total() const;
  // Unit directions, finite nonnegative masses, pairwise distinct directions.
  void validate() const;
};

struct MeasureDiagnostics {
  double total_mass = 0.0;
  Vec centroid_vector;
  double hemisphere_margin = 0.0;
  bool degenerate = false;
};

enum class MeasureMethod { Auto, Projection, Facet };

struct MeasureConfig {
  MeasureMethod method = MeasureMethod::Auto;
  ProjectionConfig projection;
  int simplex_nodes = 5;
  int hemi_theta = 16;
  int hemi_phi = 32;
  // Geometric layers toward the facet boundary when q < 1 (and q < 2, fewer).
  int layers_small_q = 12;
  int layers_mid_q = 4;
  double tol = 1e-3;
  bool refine = true;
  // Use closed forms at q = 1 and q = n + 1 under Auto.
  bool closed_forms = true;
};

struct PolytopeMeasure {
  double I = 0.0;
  std::vector<double> F;
};

// I_q(P) together with the facet masses F_q(P, {u_i}).
PolytopeMeasure chord_data(const HPolytope& P, double q, const MeasureConfig& cfg = {});

// Facet masses by direct quadrature of (2q/omega_n) int_facet V~_{q-1}(P, z) dz.
std::vector<double> facet_quadrature_measure(const HPolytope& P, double q, const MeasureConfig& cfg);

DiscreteSphericalMeasure chord_measure_polytope(const HPolytope& P, double q, const MeasureConfig& cfg = {});
DiscreteSphericalMeasure cone_chord_measure(const HPolytope& P, double q, const MeasureConfig& cfg = {});
DiscreteSphericalMeasure lp_chord_measure(const HPolytope& P, double p, double q, const MeasureConfig& cfg = {});

MeasureDiagnostics measure_diagnostics(const DiscreteSphericalMeasure& mu, int grid = 24);

struct VariationalRow {
  double t = 0.0;
  double derivative = 0.0;  // finite difference D(t)
  double pairing = 0.0;
  double mismatch = 0.0;
};

struct VariationalTable {
  std::vector<VariationalRow> rows;
  double I = 0.0;
  double total_mass_scale = 0.0;  // (n + q - 1) I_q(K)
  double rate = 0.0;              // log-log slope of mismatch against t
  double terminal_relative = 0.0;
};

VariationalTable variational_check(const HPolytope& K, const HPolytope& L, double q, const std::vector<double>& t_seq,
                                   const MeasureConfig& cfg = {});
VariationalTable log_variational_check(const HPolytope& K, const std::vector<double>& g, double q,
                                       const std::vector<double>& t_seq, const MeasureConfig& cfg = {});

// t = 1e-2, halved until below `t_min` is reached (inclusive of the last value >= t_min).
std::vector<double> halving_sequence(double t0, double t_min);

struct LimitRow {
  double q = 0.0;
  double total_mass = 0.0;
  double target = 0.0;
  double relative_error = 0.0;
};

struct SmoothLimitConfig {
  int surface_theta = 24;
  int surface_phi = 48;
  int hemi_t = 24;
  int hemi_phi = 48;
};

std::vector<LimitRow> q_zero_limit_check(const Body& K, const std::vector<double>& q_seq,
                                         const SmoothLimitConfig& cfg = {});

}  // namespace chordgeom
