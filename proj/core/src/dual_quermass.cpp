#include "chordgeom/dual_quermass.hpp"

#include <algorithm>
#include <cmath>

namespace chordgeom {

PointLocation locate(const Body& K, const Vec& z) {
  const double lvl = boundary_level(K, z);
  const double tol = 1e-10 * diameter(K);
  if (lvl > tol) return PointLocation::Outside;
  if (lvl >= -tol) return PointLocation::Boundary;
  return PointLocation::Interior;
}

double ball_boundary_dual_v(int n, double q) {
  return std::pow(2.0, q - 1.0) * (n - 1) * omega(n - 1) * beta_fn(0.5 * (q + 1.0), 0.5 * (n - 1)) / n;
}

HemisphereRule boundary_rule(const Body& K, const Vec& z, double q, int n_theta, int n_phi, bool& jacobi) {
  const Vec p = -outer_normal(K, z);
  jacobi = is_smooth(K);
  if (jacobi) return jacobi_hemisphere(p, q, n_theta, n_theta, n_phi);
  return hemisphere_grid(p, n_theta, n_phi);
}

double boundary_dual_v(const Body& K, const Vec& z, double q, const HemisphereRule& rule, bool jacobi) {
  const int n = dim(K);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double rho = radial_extended(K, z, rule.nodes[k]);
    if (rho <= 0.0) continue;
    if (jacobi) {
      s += rule.weights[k] * std::pow(rho / rule.t[k], q);
    } else {
      s += rule.weights[k] * std::pow(rho, q);
    }
  }
  return s / n;
}

namespace {

bool on_single_facet(const HPolytope& P, const Vec& z) {
  const double tol = 1e-10 * P.diameter();
  int count = 0;
  for (int i = 0; i < P.size(); ++i) {
    if (P.redundant(i)) continue;
    if (P.A().row(i).dot(z) - P.h()[i] >= -tol) ++count;
  }
  return count == 1;
}

}  // namespace

double dual_v(const Body& K, const Vec& z, double q, const SphereQuadrature& quad) {
  const int n = dim(K);
  if (quad.n != n) throw Error(ErrorCode::Precondition, "quadrature dimension mismatch");
  const PointLocation loc = locate(K, z);
  if (loc == PointLocation::Outside) throw Error(ErrorCode::PointOutside, "z must lie in K; use dual_v_signed");
  if (loc == PointLocation::Boundary) {
    if (q < 0.0) throw Error(ErrorCode::DivergentIndex, "boundary point with q <= 0");
    if (q == 0.0) return 0.5 * omega(n);
    const HPolytope* P = as_polytope(K);
    const bool hemi = !P || on_single_facet(*P, z);
    if (hemi) {
      const int nt = quad.scheme == SphereScheme::ProductGrid ? std::max(8, quad.n_theta / 2) : (n <= 3 ? 64 : 16);
      const int np = quad.scheme == SphereScheme::ProductGrid ? std::max(8, quad.n_phi) : (n <= 3 ? 128 : 32);
      bool jac = false;
      HemisphereRule R = boundary_rule(K, z, q, nt, np, jac);
      return boundary_dual_v(K, z, q, R, jac);
    }
  }
  double s = 0.0;
  for (int k = 0; k < quad.size(); ++k) {
    const double rho = radial_extended(K, z, quad.nodes[k]);
    if (rho > 0.0) s += quad.weights[k] * std::pow(rho, q);
  }
  return s / n;
}

SignedDualV dual_v_signed(const Body& K, const Vec& z, double q, const SphereQuadrature& quad) {
  if (!(q > 0.0)) throw Error(ErrorCode::Precondition, "signed dual quermassintegral needs q > 0");
  const int n = dim(K);
  SignedDualV out;
  for (int k = 0; k < quad.size(); ++k) {
    const double rho = radial_extended(K, z, quad.nodes[k]);
    if (rho > 0.0) {
      out.plus += quad.weights[k] * std::pow(rho, q);
    } else if (rho < 0.0) {
      out.minus += quad.weights[k] * std::pow(-rho, q);
    }
  }
  out.plus /= n;
  out.minus /= n;
  return out;
}

SignedDualV dual_v_signed(const Body& K, const Vec& z, double q) {
  return dual_v_signed(K, z, q, SphereQuadrature::default_for(dim(K)));
}

Vec sample_uniform(const Body& K, std::mt19937_64& g) {
  const int n = dim(K);
  auto unit_ball = [&]() {
    Vec u = random_direction(n, g);
    return Vec(u * std::pow(uniform01(g), 1.0 / n));
  };
  if (auto B = std::get_if<Ball>(&K)) return B->center + B->radius * unit_ball();
  if (auto E = std::get_if<Ellipsoid>(&K)) return E->to_world(unit_ball().cwiseProduct(E->semi_axes()));
  const HPolytope* P = as_polytope(K);
  auto [lo, hi] = bounding_box(K);
  Vec x(n);
  while (true) {
    for (int i = 0; i < n; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * uniform01(g);
    if (P->contains(x)) return x;
  }
}

MCValue riesz_dual_v(const Body& K, const Vec& z, double q, long N, std::uint64_t seed) {
  if (!(q > 0.0)) throw Error(ErrorCode::Precondition, "Riesz form needs q > 0");
  const int n = dim(K);
  MCValue out;
  out.integrability_warning = q - n <= -n;
  const int blocks = 32;
  const double V = volume(K);
  std::vector<double> bsum(blocks, 0.0);
  std::vector<long> bcnt(blocks, 0);
  for (int b = 0; b < blocks; ++b) {
    auto g = substream(seed, stream::riesz_dual, b);
    const long cnt = N / blocks + (b < N % blocks ? 1 : 0);
    for (long i = 0; i < cnt; ++i) {
      Vec x = sample_uniform(K, g);
      const double r = (x - z).norm();
      if (r > 0.0) bsum[b] += std::pow(r, q - n);
    }
    bcnt[b] = cnt;
  }
  double tot = 0.0;
  long tc = 0;
  for (int b = 0; b < blocks; ++b) {
    tot += bsum[b];
    tc += bcnt[b];
  }
  const double c = q / n * V;
  out.value = c * tot / tc;
  double var = 0.0;
  for (int b = 0; b < blocks; ++b) {
    const double loo = c * (tot - bsum[b]) / (tc - bcnt[b]);
    var += (loo - out.value) * (loo - out.value);
  }
  out.std_error = std::sqrt(var * (blocks - 1.0) / blocks);
  out.samples = tc;
  return out;
}

CurvatureFit mean_curvature_limit(const Body& K, const Vec& z, const std::vector<double>& q_seq,
                                  double max_residual, int n_t, int n_phi) {
  if (!is_smooth(K)) throw Error(ErrorCode::Precondition, "mean curvature limit needs a ball or ellipsoid");
  if (q_seq.size() < 2) throw Error(ErrorCode::Precondition, "need at least two q values");
  if (locate(K, z) != PointLocation::Boundary) throw Error(ErrorCode::Precondition, "z must be a boundary point");
  CurvatureFit fit;
  const int m = static_cast<int>(q_seq.size());
  Mat X(m, 2);
  Vec y(m);
  for (int k = 0; k < m; ++k) {
    const double q = q_seq[k];
    if (!(q > 0.0 && q <= 0.5)) throw Error(ErrorCode::Precondition, "q values must lie in (0, 0.5]");
    bool jac = false;
    HemisphereRule R = boundary_rule(K, z, q - 1.0, n_t, n_phi, jac);
    const double v = q * boundary_dual_v(K, z, q - 1.0, R, jac);
    fit.q.push_back(q);
    fit.values.push_back(v);
    X(k, 0) = 1.0;
    X(k, 1) = q;
    y[k] = v;
  }
  Vec c = X.colPivHouseholderQr().solve(y);
  fit.estimate = c[0];
  const Vec r = X * c - y;
  fit.fit_residual = std::sqrt(r.squaredNorm() / m) / std::max(std::abs(c[0]), 1e-300);
  if (fit.fit_residual > max_residual)
    throw Error(ErrorCode::PoorFit, "affine extrapolation residual " + std::to_string(fit.fit_residual));
  return fit;
}

}  // namespace chordgeom
