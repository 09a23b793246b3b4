#include "chordgeom/chord_measure.hpp"

#include <algorithm>
#include <cmath>

#include "chordgeom/dual_quermass.hpp"
#include "chordgeom/parallel.hpp"
#include "chordgeom/quadrature.hpp"
#include "hull.hpp"

namespace chordgeom {

double DiscreteSphericalMeasure::total() const {
  double s = 0.0;
  for (const Atom& a : atoms) s += a.mass;
  return s;
}

void DiscreteSphericalMeasure::validate() const {
  if (dim < 2) throw Error(ErrorCode::Precondition, "measure dimension must be at least 2");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (a.u.size() != dim) throw Error(ErrorCode::Precondition, "atom dimension mismatch");
    if (std::abs(a.u.norm() - 1.0) > 1e-9) throw Error(ErrorCode::Precondition, "atom direction is not a unit vector");
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw Error(ErrorCode::Precondition, "atom mass must be finite and >= 0");
    for (std::size_t j = 0; j < i; ++j)
      if ((atoms[j].u - a.u).norm() <= 1e-9) throw Error(ErrorCode::Precondition, "atom directions must be distinct");
  }
}

namespace {

bool use_closed(const HPolytope& P, double q, const MeasureConfig& cfg) {
  return cfg.method == MeasureMethod::Auto && cfg.closed_forms && (q == 1.0 || q == P.dim() + 1.0);
}

std::vector<double> facet_route_once(const HPolytope& P, double q, int k, int hemi_theta, int hemi_phi, int layers) {
  const int n = P.dim();
  const int m = P.size();
  SimplexRule rule = conical_simplex_rule(n - 1, k, layers);
  std::vector<double> F(m, 0.0);
  const Body K = P;
  parallel_for(m, [&](int i) {
    const FacetGeometry& G = P.facets()[i];
    if (G.redundant) return;
    HemisphereRule H = hemisphere_grid(-G.normal, hemi_theta, hemi_phi);
    double acc = 0.0;
    for (const auto& S : G.simplices) {
      const double vol = detail::simplex_measure(S);
      for (std::size_t r = 0; r < rule.bary.size(); ++r) {
        Vec z = Vec::Zero(n);
        for (int c = 0; c < n; ++c) z += rule.bary[r][c] * S[c];
        acc += rule.w[r] * vol * boundary_dual_v(K, z, q - 1.0, H, false);
      }
    }
    F[i] = 2.0 * q / omega(n) * acc;
  });
  return F;
}

// Antipodal facet of each facet when P = -P, else empty.
std::vector<int> even_partners(const HPolytope& P) {
  const int m = P.size();
  std::vector<int> j(m, -1);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m && j[a] < 0; ++b)
      if ((P.normals()[a] + P.normals()[b]).norm() < 1e-12 &&
          std::abs(P.offsets()[a] - P.offsets()[b]) <= 1e-12 * std::abs(P.offsets()[a]))
        j[a] = b;
    if (j[a] < 0) return {};
  }
  return j;
}

// The measure of a symmetric body is even; the direction grid need not be.
void make_even(const HPolytope& P, std::vector<double>& F) {
  const auto j = even_partners(P);
  for (std::size_t a = 0; a < j.size(); ++a)
    if (j[a] > static_cast<int>(a)) F[a] = F[j[a]] = 0.5 * (F[a] + F[j[a]]);
}

}  // namespace

std::vector<double> facet_quadrature_measure(const HPolytope& P, double q, const MeasureConfig& cfg) {
  if (!(q > 0.0)) throw Error(ErrorCode::Precondition, "chord measure needs q > 0");
  const int layers = q < 1.0 ? cfg.layers_small_q : (q < 2.0 ? cfg.layers_mid_q : 0);
  auto F = facet_route_once(P, q, cfg.simplex_nodes, cfg.hemi_theta, cfg.hemi_phi, layers);
  if (!cfg.refine) return F;
  auto G = facet_route_once(P, q, cfg.simplex_nodes + 2, cfg.hemi_theta * 3 / 2, cfg.hemi_phi * 3 / 2, layers + 2);
  double diff = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    diff = std::max(diff, std::abs(F[i] - G[i]));
    mass = std::max(mass, G[i]);
  }
  if (diff > cfg.tol * mass)
    throw Error(ErrorCode::QuadratureNonconvergence,
                "refinement changed facet masses by " + std::to_string(diff / mass) + " (relative)");
  return G;
}

PolytopeMeasure chord_data(const HPolytope& P, double q, const MeasureConfig& cfg) {
  if (!(q > 0.0)) throw Error(ErrorCode::Precondition, "chord measure needs q > 0");
  const int n = P.dim();
  const int m = P.size();
  PolytopeMeasure out;
  if (use_closed(P, q, cfg)) {
    const double V = P.volume();
    out.F.resize(m);
    if (q == 1.0) {
      out.I = V;
      for (int i = 0; i < m; ++i) out.F[i] = P.facets()[i].area;
    } else {
      out.I = (n + 1.0) * V * V / omega(n);
      for (int i = 0; i < m; ++i) out.F[i] = 2.0 * (n + 1.0) / omega(n) * V * P.facets()[i].area;
    }
    return out;
  }
  const bool projection = cfg.method == MeasureMethod::Projection || (cfg.method == MeasureMethod::Auto && n <= 4);
  if (projection) {
    auto d = projection_chord(P, q, cfg.projection, true);
    out.I = d.I;
    out.F = std::move(d.F);
    make_even(P, out.F);
    return out;
  }
  out.F = facet_quadrature_measure(P, q, cfg);
  make_even(P, out.F);
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += P.h()[i] * out.F[i];
  out.I = s / (n + q - 1.0);
  return out;
}

DiscreteSphericalMeasure chord_measure_polytope(const HPolytope& P, double q, const MeasureConfig& cfg) {
  auto d = chord_data(P, q, cfg);
  DiscreteSphericalMeasure mu;
  mu.dim = P.dim();
  for (int i = 0; i < P.size(); ++i) mu.atoms.push_back({P.normals()[i], P.redundant(i) ? 0.0 : d.F[i]});
  return mu;
}

DiscreteSphericalMeasure cone_chord_measure(const HPolytope& P, double q, const MeasureConfig& cfg) {
  const double eps = 1e-12 * P.diameter();
  for (int i = 0; i < P.size(); ++i)
    if (P.h()[i] < -eps) throw Error(ErrorCode::OriginOutside, "origin lies outside the polytope");
  auto mu = chord_measure_polytope(P, q, cfg);
  const double c = 1.0 / (P.dim() + q - 1.0);
  for (int i = 0; i < P.size(); ++i) mu.atoms[i].mass *= c * std::max(P.h()[i], 0.0);
  return mu;
}

DiscreteSphericalMeasure lp_chord_measure(const HPolytope& P, double p, double q, const MeasureConfig& cfg) {
  if (p != 1.0) {
    const double eps = 1e-12 * P.diameter();
    for (int i = 0; i < P.size(); ++i)
      if (P.h()[i] <= eps) throw Error(ErrorCode::OriginNotInterior, "origin must be interior when p != 1");
  }
  auto mu = chord_measure_polytope(P, q, cfg);
  if (p == 1.0) return mu;
  for (int i = 0; i < P.size(); ++i) mu.atoms[i].mass *= std::pow(P.h()[i], 1.0 - p);
  return mu;
}

MeasureDiagnostics measure_diagnostics(const DiscreteSphericalMeasure& mu, int grid) {
  const int n = mu.dim;
  MeasureDiagnostics d;
  d.centroid_vector = Vec::Zero(n);
  for (const Atom& a : mu.atoms) {
    d.total_mass += a.mass;
    d.centroid_vector += a.mass * a.u;
  }
  std::vector<Vec> dirs;
  auto Q = n <= 3 ? SphereQuadrature::product_grid(n, grid, 2 * grid)
                  : SphereQuadrature::product_grid(n, std::max(4, grid / 3), std::max(8, grid / 2));
  dirs = Q.nodes;
  std::vector<Vec> U;
  for (const Atom& a : mu.atoms)
    if (a.mass > 0.0) U.push_back(a.u);
  for (const Vec& u : U) {
    dirs.push_back(u);
    dirs.push_back(-u);
  }
  // Directions orthogonal to spans of up to n-1 atoms: candidate hemisphere boundaries.
  const int M = static_cast<int>(U.size());
  for (int k = 1; k <= n - 1; ++k) {
    double combos = 1.0;
    for (int j = 0; j < k; ++j) combos = combos * (M - j) / (j + 1);
    if (combos > 20000) break;
    detail::for_each_subset(M, k, [&](const std::vector<int>& S) {
      Mat E(k, n);
      for (int r = 0; r < k; ++r) E.row(r) = U[S[r]].transpose();
      Eigen::FullPivLU<Mat> lu(E);
      Mat N = lu.kernel();
      for (int c = 0; c < N.cols(); ++c) {
        Vec v = N.col(c).normalized();
        dirs.push_back(v);
        dirs.push_back(-v);
      }
    });
  }
  d.hemisphere_margin = std::numeric_limits<double>::infinity();
  for (const Vec& v : dirs) {
    double s = 0.0;
    for (const Atom& a : mu.atoms) s += a.mass * std::max(0.0, v.dot(a.u));
    d.hemisphere_margin = std::min(d.hemisphere_margin, s);
  }
  d.degenerate = d.hemisphere_margin <= 1e-12 * std::max(d.total_mass, 1e-300);
  return d;
}

std::vector<double> halving_sequence(double t0, double t_min) {
  std::vector<double> t;
  for (double x = t0; x >= t_min * (1.0 - 1e-12); x *= 0.5) t.push_back(x);
  return t;
}

namespace {

void finish_table(VariationalTable& T) {
  std::vector<double> lx, ly;
  double scale = std::max(T.total_mass_scale, 1e-300);
  for (const auto& r : T.rows)
    if (r.mismatch > 1e-15 * scale) {
      lx.push_back(std::log(r.t));
      ly.push_back(std::log(r.mismatch));
    }
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    T.rate = sxy / sxx;
  } else {
    // Mismatch at round-off level throughout.
    T.rate = std::numeric_limits<double>::infinity();
  }
  T.terminal_relative = T.rows.empty() ? 0.0 : T.rows.back().mismatch / scale;
}

}  // namespace

VariationalTable variational_check(const HPolytope& K, const HPolytope& L, double q, const std::vector<double>& t_seq,
                                   const MeasureConfig& cfg) {
  if (K.size() != L.size()) throw Error(ErrorCode::Precondition, "K and L must share a normal set");
  for (int i = 0; i < K.size(); ++i)
    if ((K.normals()[i] - L.normals()[i]).norm() > 1e-9)
      throw Error(ErrorCode::Precondition, "K and L must share a normal set");
  const int n = K.dim();
  const std::vector<double> hK = K.offsets();
  const std::vector<double> hL = L.realized_offsets();
  VariationalTable T;
  MeasureConfig c = cfg;
  if (K.dim() == 4 && !c.projection.n4_pole) c.projection.n4_pole = principal_pole(K);
  auto base = chord_data(K, q, c);
  T.I = base.I;
  T.total_mass_scale = (n + q - 1.0) * base.I;
  double pairing = 0.0;
  for (int i = 0; i < K.size(); ++i) pairing += hL[i] * base.F[i];
  for (double t : t_seq) {
    std::vector<double> h(hK.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = hK[i] + t * hL[i];
    HPolytope Kt(K.normals(), h);
    const double It = chord_data(Kt, q, c).I;
    VariationalRow r;
    r.t = t;
    r.derivative = (It - base.I) / t;
    r.pairing = pairing;
    r.mismatch = std::abs(r.derivative - pairing);
    T.rows.push_back(r);
  }
  finish_table(T);
  return T;
}

VariationalTable log_variational_check(const HPolytope& K, const std::vector<double>& g, double q,
                                       const std::vector<double>& t_seq, const MeasureConfig& cfg) {
  if (static_cast<int>(g.size()) != K.size()) throw Error(ErrorCode::Precondition, "g must have one entry per facet");
  for (int i = 0; i < K.size(); ++i)
    if (!(K.h()[i] > 0.0)) throw Error(ErrorCode::OriginNotInterior, "origin must be interior");
  const int n = K.dim();
  VariationalTable T;
  MeasureConfig c = cfg;
  if (K.dim() == 4 && !c.projection.n4_pole) c.projection.n4_pole = principal_pole(K);
  auto base = chord_data(K, q, c);
  T.I = base.I;
  T.total_mass_scale = (n + q - 1.0) * base.I;
  // (n+q-1) sum g_i G_i = sum g_i h_i F_i.
  double pairing = 0.0;
  for (int i = 0; i < K.size(); ++i) pairing += g[i] * K.h()[i] * base.F[i];
  for (double t : t_seq) {
    std::vector<double> h(K.size());
    for (int i = 0; i < K.size(); ++i) h[i] = K.h()[i] * std::exp(t * g[i]);
    HPolytope Kt(K.normals(), h);
    const double It = chord_data(Kt, q, c).I;
    VariationalRow r;
    r.t = t;
    r.derivative = (It - base.I) / t;
    r.pairing = pairing;
    r.mismatch = std::abs(r.derivative - pairing);
    T.rows.push_back(r);
  }
  finish_table(T);
  return T;
}

std::vector<LimitRow> q_zero_limit_check(const Body& K, const std::vector<double>& q_seq, const SmoothLimitConfig& cfg) {
  std::optional<Ellipsoid> E;
  if (auto B = std::get_if<Ball>(&K)) E.emplace(B->center, Vec::Constant(B->dim(), B->radius));
  if (auto e = std::get_if<Ellipsoid>(&K)) E.emplace(*e);
  if (!E) throw Error(ErrorCode::Precondition, "q -> 0 limit needs a ball or an ellipsoid");
  const int n = E->dim();
  const Body body = *E;
  const Vec& a = E->semi_axes();
  auto S = SphereQuadrature::product_grid(n, cfg.surface_theta, cfg.surface_phi);
  std::vector<Vec> pts(S.size());
  std::vector<double> dS(S.size());
  double curv = 0.0;
  for (int k = 0; k < S.size(); ++k) {
    pts[k] = E->to_world(a.cwiseProduct(S.nodes[k]));
    dS[k] = S.weights[k] * a.prod() * S.nodes[k].cwiseQuotient(a).norm();
    curv += dS[k] * ellipsoid_mean_curvature(*E, pts[k]);
  }
  const double target = (n - 1) * omega(n - 1) / (n * omega(n)) * curv;
  std::vector<LimitRow> rows;
  for (double q : q_seq) {
    if (!(q > 0.0)) throw Error(ErrorCode::Precondition, "q values must be positive");
    std::vector<double> part(S.size(), 0.0);
    parallel_for(S.size(), [&](int k) {
      bool jac = false;
      HemisphereRule R = boundary_rule(body, pts[k], q - 1.0, cfg.hemi_t, cfg.hemi_phi, jac);
      part[k] = dS[k] * boundary_dual_v(body, pts[k], q - 1.0, R, jac);
    });
    double s = 0.0;
    for (double x : part) s += x;
    LimitRow r;
    r.q = q;
    r.total_mass = 2.0 * q / omega(n) * s;
    r.target = target;
    r.relative_error = std::abs(r.total_mass - target) / target;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace chordgeom
