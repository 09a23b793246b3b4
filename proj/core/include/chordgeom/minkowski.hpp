#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chordgeom/chord_measure.hpp"

namespace chordgeom {

struct SolverConfig {
  double q = 1.0;
  int max_iters = 400;
  double step0 = 1.0;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double grad_tol = 1e-10;
  double residual_tol = 1e-4;
  double measure_tol_budget = 0.0;
  std::uint64_t seed = 0;
  bool symmetric = false;
  // Off only for negative tests that feed data violating the existence conditions.
  bool check_data = true;
  MeasureConfig measure;
};

enum class SolverStatus { Converged, NonConvergence, DegenerateDrift, CollapseDetected };
const char* status_name(SolverStatus s);

struct SolverResult {
  std::optional<HPolytope> body;
  std::vector<double> objective_trace;
  double residual = 0.0;
  std::vector<int> unmatched_atoms;
  double scale_lambda = 1.0;
  int iterations = 0;
  double grad_norm = 0.0;
  SolverStatus status = SolverStatus::NonConvergence;
  bool ok() const { return status == SolverStatus::Converged; }
};

struct DataReport {
  bool ok = true;
  std::vector<std::string> violations;
  double hemisphere_margin = 0.0;
  double centroid_relative = 0.0;
  // Smallest (bound - ratio) over the subspace family; log data only.
  double worst_margin = 0.0;
  int worst_k = 0;
  Mat worst_basis;
  // q = 1 only: the inequality holds with equality, and for every subspace at equality
  // the remaining mass lies in a complementary subspace (the cube case).
  bool equality_split = false;
};

DataReport validate_chord_data(const DiscreteSphericalMeasure& mu, double centroid_tol = 1e-3);
DataReport validate_log_data(const DiscreteSphericalMeasure& mu, double q);

// (log of) I_q(K)^{1/(n+q-1)} / sum m_i h_i, with h the offsets of K.
double chord_objective(const HPolytope& K, const DiscreteSphericalMeasure& mu, double q, const MeasureConfig& cfg = {});
// E_mu(K) + log I_q(K) / (n+q-1).
double log_objective(const HPolytope& K, const DiscreteSphericalMeasure& mu, double q, const MeasureConfig& cfg = {});

SolverResult solve_chord_minkowski(const DiscreteSphericalMeasure& mu, const SolverConfig& cfg);
SolverResult solve_chord_log_minkowski(const DiscreteSphericalMeasure& mu, const SolverConfig& cfg);

double entropy(const HPolytope& K, const DiscreteSphericalMeasure& mu);

// Index of the antipodal partner of each atom, or -1.
std::vector<int> antipodal_partners(const DiscreteSphericalMeasure& mu, double tol = 1e-9);

}  // namespace chordgeom
