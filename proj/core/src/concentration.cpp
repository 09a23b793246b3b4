#include "chordgeom/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chordgeom/chord_integral.hpp"
#include "chordgeom/corpus.hpp"
#include "chordgeom/minkowski.hpp"
#include "chordgeom/parallel.hpp"
#include "hull.hpp"

namespace chordgeom {

SubspaceSpec::SubspaceSpec(Mat b) : basis(std::move(b)) {
  const int k = static_cast<int>(basis.cols());
  const int n = static_cast<int>(basis.rows());
  if (k < 1 || k > n - 1) throw Error(ErrorCode::Precondition, "subspace dimension must be in [1, n-1]");
  if ((basis.transpose() * basis - Mat::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::Precondition, "subspace basis is not orthonormal");
}

bool SubspaceSpec::contains(const Vec& u, double tol) const {
  return (u - basis * (basis.transpose() * u)).norm() <= tol;
}

std::string SubspaceSpec::label() const {
  std::ostringstream os;
  os << "span{";
  for (int c = 0; c < k(); ++c) {
    int idx = -1;
    for (int i = 0; i < n(); ++i)
      if (std::abs(std::abs(basis(i, c)) - 1.0) < 1e-12) idx = i;
    if (c) os << ",";
    if (idx >= 0)
      os << "e" << idx + 1;
    else
      os << "b" << c + 1;
  }
  os << "}";
  return os.str();
}

std::vector<SubspaceSpec> coordinate_subspaces(int n) {
  std::vector<SubspaceSpec> out;
  for (int k = 1; k <= n - 1; ++k)
    detail::for_each_subset(n, k, [&](const std::vector<int>& S) {
      Mat B = Mat::Zero(n, k);
      for (int c = 0; c < k; ++c) B(S[c], c) = 1.0;
      out.emplace_back(B);
    });
  return out;
}

double concentration_bound(int n, int k, double q) {
  if (q == 1.0) return static_cast<double>(k) / n;
  return std::min(2.0 * k / (n + q - 1.0), 1.0);
}

void require_symmetric(const HPolytope& K, double tol) {
  const auto hr = K.realized_offsets();
  const double scale = *std::max_element(hr.begin(), hr.end());
  for (int i = 0; i < K.size(); ++i) {
    if (K.redundant(i)) continue;
    bool found = false;
    for (int j = 0; j < K.size() && !found; ++j)
      if (!K.redundant(j) && (K.normals()[i] + K.normals()[j]).norm() <= tol &&
          std::abs(hr[i] - hr[j]) <= tol * scale)
        found = true;
    if (!found) throw Error(ErrorCode::NotSymmetric, "facet " + std::to_string(i) + " has no antipodal twin");
  }
}

MassRatio subspace_mass_ratio(const DiscreteSphericalMeasure& G, const SubspaceSpec& xi, int q) {
  double in = 0.0;
  for (const Atom& a : G.atoms)
    if (xi.contains(a.u)) in += a.mass;
  return {in / G.total(), concentration_bound(G.dim, xi.k(), q)};
}

MassRatio subspace_mass_ratio(const HPolytope& K, const SubspaceSpec& xi, int q, const MeasureConfig& cfg) {
  if (q < 1 || q > K.dim() + 1) throw Error(ErrorCode::Precondition, "q must be an integer in [1, n+1]");
  if (xi.n() != K.dim()) throw Error(ErrorCode::Precondition, "subspace dimension mismatch");
  require_symmetric(K);
  return subspace_mass_ratio(cone_chord_measure(K, q, cfg), xi, q);
}

ConcentrationSweep concentration_sweep(int n, int bodies, std::uint64_t seed, double budget,
                                       const MeasureConfig& cfg) {
  const auto subs = coordinate_subspaces(n);
  std::vector<std::vector<ConcentrationRow>> per(bodies);
  for (int b = 0; b < bodies; ++b) {
    const HPolytope K = random_aligned_symmetric_polytope(n, seed, b);
    require_symmetric(K);
    for (int q = 1; q <= n + 1; ++q) {
      const auto G = cone_chord_measure(K, q, cfg);
      for (const auto& xi : subs) {
        const auto r = subspace_mass_ratio(G, xi, q);
        per[b].push_back({b, q, xi.label(), xi.k(), r.ratio, r.bound, r.bound - r.ratio});
      }
    }
  }
  ConcentrationSweep out;
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (auto& rows : per)
    for (auto& r : rows) {
      if (r.slack < -budget) ++out.violations;
      out.worst_slack = std::min(out.worst_slack, r.slack);
      out.rows.push_back(std::move(r));
    }
  return out;
}

std::vector<SharpnessRow> sharpness_sequence(int k, int q, int n, const std::vector<int>& j_list,
                                             const MeasureConfig& cfg) {
  if (!(1 <= k && k < q - 1 && q - 1 <= n))
    throw Error(ErrorCode::Precondition, "sharpness sequence needs 1 <= k < q-1 <= n");
  Mat B = Mat::Zero(n, k);
  for (int c = 0; c < k; ++c) B(c, c) = 1.0;
  const SubspaceSpec xi(B);
  const double limit = 2.0 * k / (n + q - 1.0);
  std::vector<SharpnessRow> out;
  for (int j : j_list) {
    if (j < 1) throw Error(ErrorCode::Precondition, "j must be positive");
    Vec w = Vec::Ones(n);
    for (int c = 0; c < k; ++c) w[c] = 1.0 / j;
    const auto G = cone_chord_measure(box(w), q, cfg);
    out.push_back({j, subspace_mass_ratio(G, xi, q).ratio, limit});
  }
  return out;
}

double ellipsoid_bound_constant(double q, int n) {
  const int m = static_cast<int>(std::floor(q));
  if (!(q > 1.0 && q < n + 1.0) || q == m) throw Error(ErrorCode::Precondition, "q must be a non-integer in (1, n+1)");
  const double on = omega(n);
  if (m == n) {
    const double w = omega(n - 1);
    return std::pow(2.0, q - n + 2.0) * q * (q - 1.0) * w * w / ((q - n) * (q - n + 1.0) * n * on);
  }
  const double w1 = omega(m - 1), w2 = omega(n - m);
  return std::pow(2.0, n - m + 3.0) * q * (q - 1.0) * (n - m) * w1 * w1 * w2 * w2 /
         ((m + 1.0 - q) * (q - m) * (q - m + 1.0) * n * on);
}

EllipsoidBound ellipsoid_chord_bound_check(const Ellipsoid& E, double q, long samples, std::uint64_t seed) {
  const int n = E.dim();
  const Vec& a = E.semi_axes();
  if (a[n - 1] > 1.0 + 1e-15) throw Error(ErrorCode::Precondition, "largest semi-axis must be <= 1");
  EllipsoidBound r;
  r.constant = ellipsoid_bound_constant(q, n);
  const int m = static_cast<int>(std::floor(q));
  double prod = 1.0;
  for (int i = 0; i < m; ++i) prod *= a[i] * a[i];
  prod *= std::pow(a[m - 1], q - m - 1.0);
  for (int i = m; i < n; ++i) prod *= a[i];
  r.rhs = r.constant * prod;
  if ((a.array() == a[0]).all()) {
    r.lhs = ball_chord_integral(n, q) * std::pow(a[0], n + q - 1.0);
  } else {
    const auto est = chord_line_mc(Body(E), q, samples, seed);
    r.lhs = est.value;
    r.lhs_std_error = est.std_error;
  }
  r.holds = r.lhs <= r.rhs + 3.0 * r.lhs_std_error;
  return r;
}

EllipsoidSweep ellipsoid_bound_sweep(int n, int count, const std::vector<double>& q_values, long samples,
                                     std::uint64_t seed) {
  EllipsoidSweep out;
  out.q_values = q_values;
  out.min_ratio_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const Ellipsoid E = random_ellipsoid(n, 0.05, seed, i);
    for (std::size_t t = 0; t < q_values.size(); ++t) {
      const auto r = ellipsoid_chord_bound_check(E, q_values[t], samples, splitmix64(seed + 1000 * i + t));
      ++out.checks;
      if (!r.holds) ++out.violations;
      out.min_ratio_slack = std::min(out.min_ratio_slack, (r.rhs + 3.0 * r.lhs_std_error - r.lhs) / r.rhs);
    }
  }
  return out;
}

double entropy(const Body& K, const DiscreteSphericalMeasure& mu) {
  double s = 0.0;
  for (const Atom& a : mu.atoms) {
    const double h = support(K, a.u);
    if (!(h > 0.0)) throw Error(ErrorCode::NonpositiveSupport, "support function must be positive at every atom");
    s += a.mass * std::log(h);
  }
  return -s / mu.total();
}

std::vector<EntropyRow> ellipsoid_entropy_bound_check(const std::vector<Ellipsoid>& seq,
                                                      const DiscreteSphericalMeasure& mu, double q, double t0,
                                                      double c0) {
  std::vector<EntropyRow> out;
  const int n = mu.dim;
  const int m = static_cast<int>(std::floor(q));
  const double e = n + q - 1.0;
  for (std::size_t l = 0; l < seq.size(); ++l) {
    const Vec& a = seq[l].semi_axes();
    double rhs = 0.0;
    for (int k = 0; k < std::min(m - 1, n); ++k) rhs -= 2.0 * std::log(a[k]) / e;
    if (m <= n) rhs -= (q - m + 1.0) / e * std::log(a[m - 1]);
    for (int k = m; k < n; ++k) rhs -= std::log(a[k]) / e;
    rhs += t0 * std::log(a[0]) + c0;
    const double E = entropy(Body(seq[l]), mu);
    out.push_back({static_cast<int>(l), E, rhs, E - rhs});
  }
  return out;
}

double default_entropy_t0(const DiscreteSphericalMeasure& mu, double q) {
  return 0.5 * validate_log_data(mu, q).worst_margin;
}

}  // namespace chordgeom
