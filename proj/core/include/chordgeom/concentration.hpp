#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chordgeom/body.hpp"
#include "chordgeom/chord_measure.hpp"

namespace chordgeom {

struct SubspaceSpec {
  // n x k, orthonormal columns.
  Mat basis;
  explicit SubspaceSpec(Mat b);
  int k() const { return static_cast<int>(basis.cols()); }
  int n() const { return static_cast<int>(basis.rows()); }
  bool contains(const Vec& u, double tol = 1e-9) const;
  std::string label() const;
};

// span{e_i : i in S} for every proper nonempty index set S.
std::vector<SubspaceSpec> coordinate_subspaces(int n);

struct MassRatio {
  double ratio = 0.0;
  double bound = 0.0;
};

double concentration_bound(int n, int k, double q);

// Throws NotSymmetric unless K = -K.
void require_symmetric(const HPolytope& K, double tol = 1e-9);

MassRatio subspace_mass_ratio(const HPolytope& K, const SubspaceSpec& xi, int q, const MeasureConfig& cfg = {});
MassRatio subspace_mass_ratio(const DiscreteSphericalMeasure& G, const SubspaceSpec& xi, int q);

struct ConcentrationRow {
  int body = 0;
  int q = 0;
  std::string subspace;
  int k = 0;
  double ratio = 0.0;
  double bound = 0.0;
  double slack = 0.0;
};

struct ConcentrationSweep {
  std::vector<ConcentrationRow> rows;
  int violations = 0;
  double worst_slack = 0.0;
};

// Random symmetric polytopes x coordinate subspaces x q in {1..n+1}.
ConcentrationSweep concentration_sweep(int n, int bodies, std::uint64_t seed, double budget,
                                       const MeasureConfig& cfg = {});

struct SharpnessRow {
  int j = 0;
  double ratio = 0.0;
  double limit = 0.0;
};

// Boxes (D/j) x Q with D the k-cube and Q the (n-k)-cube; xi = span{e_1..e_k}.
std::vector<SharpnessRow> sharpness_sequence(int k, int q, int n, const std::vector<int>& j_list,
                                             const MeasureConfig& cfg = {});

// Two-case constant c_{q,m,n}, m = floor(q).
double ellipsoid_bound_constant(double q, int n);

struct EllipsoidBound {
  double lhs = 0.0;
  double lhs_std_error = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  bool holds = false;
};

EllipsoidBound ellipsoid_chord_bound_check(const Ellipsoid& E, double q, long samples, std::uint64_t seed);

struct EllipsoidSweep {
  std::vector<double> q_values;
  int checks = 0;
  int violations = 0;
  double min_ratio_slack = 0.0;  // min over checks of (rhs + 3 sigma - lhs) / rhs
};

EllipsoidSweep ellipsoid_bound_sweep(int n, int count, const std::vector<double>& q_values, long samples,
                                     std::uint64_t seed);

double entropy(const Body& K, const DiscreteSphericalMeasure& mu);

struct EntropyRow {
  int l = 0;
  double entropy = 0.0;
  double rhs = 0.0;
  double difference = 0.0;  // entropy - rhs
};

std::vector<EntropyRow> ellipsoid_entropy_bound_check(const std::vector<Ellipsoid>& seq,
                                                      const DiscreteSphericalMeasure& mu, double q, double t0,
                                                      double c0);

// Half the smallest margin in the subspace mass inequality of mu.
double default_entropy_t0(const DiscreteSphericalMeasure& mu, double q);

}  // namespace chordgeom
