#include "chordgeom/body.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chordgeom/quadrature.hpp"
#include "hull.hpp"

namespace chordgeom {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::DivergentIndex: return "DivergentIndex";
    case ErrorCode::PoorFit: return "PoorFit";
    case ErrorCode::QuadratureNonconvergence: return "QuadratureNonconvergence";
    case ErrorCode::OriginOutside: return "OriginOutside";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DegenerateDrift: return "DegenerateDrift";
    case ErrorCode::CollapseDetected: return "CollapseDetected";
    case ErrorCode::NonpositiveSupport: return "NonpositiveSupport";
    case ErrorCode::PointOutside: return "PointOutside";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::Schema: return "Schema";
  }
  return "Error";
}

UnitVector::UnitVector(const Vec& v) {
  const double r = v.norm();
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::Precondition, "zero or non-finite direction");
  v_ = v / r;
}

// ---------------------------------------------------------------- HPolytope

HPolytope::HPolytope(std::vector<Vec> normals, std::vector<double> offsets) {
  if (normals.empty() || normals.size() != offsets.size())
    throw Error(ErrorCode::Precondition, "normals and offsets must be nonempty and of equal length");
  n_ = static_cast<int>(normals[0].size());
  if (n_ < 2) throw Error(ErrorCode::Precondition, "dimension must be at least 2");
  const int m = static_cast<int>(normals.size());
  for (int i = 0; i < m; ++i) {
    if (normals[i].size() != n_) throw Error(ErrorCode::Precondition, "normal dimension mismatch");
    const double r = normals[i].norm();
    if (!(r > 0.0) || !std::isfinite(offsets[i]))
      throw Error(ErrorCode::Precondition, "zero normal or non-finite offset");
    normals[i] /= r;
    offsets[i] /= r;
  }
  normals_ = std::move(normals);
  offsets_ = std::move(offsets);
  A_.resize(m, n_);
  h_.resize(m);
  for (int i = 0; i < m; ++i) {
    A_.row(i) = normals_[i].transpose();
    h_[i] = offsets_[i];
  }

  if (!detail::positively_spanning(normals_))
    throw Error(ErrorCode::Unbounded, "normals do not positively span R^n");

  const double hmax = std::max(h_.cwiseAbs().maxCoeff(), 1e-300);
  auto cheb = detail::chebyshev_ball(A_, h_);
  if (!(cheb.radius >= 1e-10 * hmax))
    throw Error(ErrorCode::EmptyInterior, "inscribed ball radius below threshold");
  cheb_center_ = cheb.center;
  cheb_radius_ = cheb.radius;

  const Vec& c = cheb_center_;
  const Vec hs = h_ - A_ * c;
  const double scale = hs.maxCoeff();
  const double vtol = 1e-10 * scale;
  std::vector<Vec> V = detail::enumerate_vertices(A_, hs, vtol);
  std::vector<int> all(V.size());
  std::iota(all.begin(), all.end(), 0);
  if (static_cast<int>(V.size()) < n_ + 1 || detail::affine_rank(V, all, 1e-9 * scale) < n_)
    throw Error(ErrorCode::DegenerateHull, "vertex set is not full dimensional");

  double diam = 0.0;
  for (std::size_t i = 0; i < V.size(); ++i)
    for (std::size_t j = i + 1; j < V.size(); ++j) diam = std::max(diam, (V[i] - V[j]).norm());
  diameter_ = diam;

  const double ttol = 1e-9 * std::max(scale, diam);
  std::vector<std::vector<int>> tight(m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < static_cast<int>(V.size()); ++k)
      if (std::abs(A_.row(i).dot(V[k]) - hs[i]) <= ttol) tight[i].push_back(k);

  const double area_eps = 1e-12 * std::pow(diam, n_ - 1);
  facets_.resize(m);
  for (int i = 0; i < m; ++i) {
    FacetGeometry& F = facets_[i];
    F.normal = normals_[i];
    F.offset = offsets_[i];
    bool dup = false;
    for (int j = 0; j < i && !dup; ++j)
      if (!facets_[j].redundant && tight[j] == tight[i]) dup = true;
    if (dup || detail::affine_rank(V, tight[i], 1e-9 * scale) < n_ - 1) {
      F.redundant = true;
      continue;
    }
    std::vector<std::vector<Vec>> simp;
    detail::face_simplices(V, tight[i], n_ - 1, tight, 1e-9 * scale, simp);
    double area = 0.0;
    for (auto& s : simp) {
      area += detail::simplex_measure(s);
      for (auto& p : s) p += c;
    }
    if (area < area_eps) {
      F.redundant = true;
      continue;
    }
    F.area = area;
    F.simplices = std::move(simp);
    for (int k : tight[i]) F.vertices.push_back(V[k] + c);
    if (n_ == 3 && F.vertices.size() > 2) {
      Vec mid = Vec::Zero(3);
      for (const Vec& p : F.vertices) mid += p;
      mid /= static_cast<double>(F.vertices.size());
      Mat B = orthonormal_complement(F.normal);
      std::vector<std::pair<double, Vec>> ang;
      for (const Vec& p : F.vertices) {
        Vec d = p - mid;
        ang.emplace_back(std::atan2(B.col(1).dot(d), B.col(0).dot(d)), p);
      }
      std::sort(ang.begin(), ang.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 0; k < ang.size(); ++k) F.vertices[k] = ang[k].second;
    }
  }

  vertices_.reserve(V.size());
  for (const Vec& v : V) vertices_.push_back(v + c);

  volume_ = 0.0;
  surface_ = 0.0;
  for (int i = 0; i < m; ++i) {
    volume_ += offsets_[i] * facets_[i].area;
    surface_ += facets_[i].area;
  }
  volume_ /= n_;

  Vec ref = Vec::Zero(n_);
  for (const Vec& v : vertices_) ref += v;
  ref /= static_cast<double>(vertices_.size());
  Vec mom = Vec::Zero(n_);
  double vol = 0.0;
  for (const auto& F : facets_) {
    for (const auto& s : F.simplices) {
      std::vector<Vec> cs = s;
      cs.push_back(ref);
      double v = detail::simplex_measure(cs);
      Vec mean = Vec::Zero(n_);
      for (const Vec& p : cs) mean += p;
      mom += v * mean / static_cast<double>(cs.size());
      vol += v;
    }
  }
  centroid_ = mom / vol;
}

int HPolytope::active_count() const {
  int k = 0;
  for (const auto& F : facets_)
    if (!F.redundant) ++k;
  return k;
}

double HPolytope::circumradius(const Vec& c) const {
  double r = 0.0;
  for (const Vec& v : vertices_) r = std::max(r, (v - c).norm());
  return r;
}

double HPolytope::support(const Vec& v) const {
  double s = -std::numeric_limits<double>::infinity();
  for (const Vec& x : vertices_) s = std::max(s, x.dot(v));
  return s;
}

std::vector<double> HPolytope::realized_offsets() const {
  std::vector<double> out(normals_.size());
  for (std::size_t i = 0; i < normals_.size(); ++i) out[i] = support(normals_[i]);
  return out;
}

Interval HPolytope::clip(const Vec& z, const Vec& u) const {
  Interval I{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const int m = size();
  for (int i = 0; i < m; ++i) {
    const double au = A_.row(i).dot(u);
    const double r = h_[i] - A_.row(i).dot(z);
    if (au > 0.0) {
      I.hi = std::min(I.hi, r / au);
    } else if (au < 0.0) {
      I.lo = std::max(I.lo, r / au);
    } else if (r < 0.0) {
      return Interval{};
    }
  }
  return I;
}

double HPolytope::violation(const Vec& x) const { return (A_ * x - h_).maxCoeff(); }

bool HPolytope::contains(const Vec& x, double tol) const { return violation(x) <= tol; }

HPolytope HPolytope::translated(const Vec& y) const {
  std::vector<double> h = offsets_;
  for (std::size_t i = 0; i < h.size(); ++i) h[i] += normals_[i].dot(y);
  return HPolytope(normals_, h);
}

HPolytope HPolytope::scaled(double t) const {
  std::vector<double> h = offsets_;
  for (double& x : h) x *= t;
  return HPolytope(normals_, h);
}

HPolytope wulff(const std::vector<Vec>& normals, const std::vector<double>& h) {
  return HPolytope(normals, h);
}

const std::vector<FacetGeometry>& facet_decomposition(const HPolytope& P) { return P.facets(); }

// ---------------------------------------------------------------- VPolytope

namespace {
HPolytope hull_of(const std::vector<Vec>& pts) {
  if (pts.empty()) throw Error(ErrorCode::DegenerateHull, "no points");
  const int n = static_cast<int>(pts[0].size());
  std::vector<int> all(pts.size());
  std::iota(all.begin(), all.end(), 0);
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, (pts[i] - pts[j]).norm());
  if (static_cast<int>(pts.size()) < n + 1 || detail::affine_rank(pts, all, 1e-9 * diam) < n)
    throw Error(ErrorCode::DegenerateHull, "points do not span R^n");
  auto F = detail::hull_facets(pts, 1e-10 * diam);
  std::vector<Vec> N;
  std::vector<double> h;
  for (auto& [a, b] : F) {
    N.push_back(a);
    h.push_back(b);
  }
  return HPolytope(N, h);
}
}  // namespace

VPolytope::VPolytope(const std::vector<Vec>& points) : hrep_(hull_of(points)) {}

// ---------------------------------------------------------------- Ball, Ellipsoid

Ball::Ball(Vec c, double r) : center(std::move(c)), radius(r) {
  if (!(r > 0.0)) throw Error(ErrorCode::Precondition, "ball radius must be positive");
  if (center.size() < 2) throw Error(ErrorCode::Precondition, "dimension must be at least 2");
}

Ellipsoid::Ellipsoid(Vec center, Vec semi_axes, std::optional<Mat> frame)
    : center_(std::move(center)) {
  const int n = static_cast<int>(center_.size());
  if (n < 2 || semi_axes.size() != n) throw Error(ErrorCode::Precondition, "ellipsoid dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (!(semi_axes[i] > 0.0)) throw Error(ErrorCode::Precondition, "semi-axes must be positive");
  Mat F = frame ? *frame : Mat::Identity(n, n);
  if (F.rows() != n || F.cols() != n) throw Error(ErrorCode::Precondition, "frame must be n x n");
  if ((F.transpose() * F - Mat::Identity(n, n)).norm() > 1e-8)
    throw Error(ErrorCode::Precondition, "frame is not orthonormal");
  // Re-orthonormalize to round-off.
  Eigen::HouseholderQR<Mat> qr(F);
  Mat Q = qr.householderQ();
  for (int j = 0; j < n; ++j)
    if (Q.col(j).dot(F.col(j)) < 0) Q.col(j) = -Q.col(j);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return semi_axes[i] < semi_axes[j]; });
  a_.resize(n);
  frame_.resize(n, n);
  for (int k = 0; k < n; ++k) {
    a_[k] = semi_axes[order[k]];
    frame_.col(k) = Q.col(order[k]);
  }
}

// ---------------------------------------------------------------- Body dispatch

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Interval quadratic_interval(double A, double B, double C) {
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0 || A <= 0.0) return Interval{};
  const double s = std::sqrt(disc);
  const double qq = -0.5 * (B + (B >= 0 ? s : -s));
  double t1 = qq / A;
  double t2 = qq != 0.0 ? C / qq : -t1;
  if (t1 > t2) std::swap(t1, t2);
  return Interval{t1, t2};
}
}  // namespace

int dim(const Body& K) {
  return std::visit([](const auto& b) { return b.dim(); }, K);
}

const HPolytope* as_polytope(const Body& K) {
  if (auto p = std::get_if<HPolytope>(&K)) return p;
  if (auto v = std::get_if<VPolytope>(&K)) return &v->hrep();
  return nullptr;
}

bool is_smooth(const Body& K) { return as_polytope(K) == nullptr; }

double support(const Body& K, const Vec& v) {
  return std::visit(overloaded{
                        [&](const HPolytope& P) { return P.support(v); },
                        [&](const VPolytope& P) { return P.hrep().support(v); },
                        [&](const Ball& B) { return B.center.dot(v) + B.radius * v.norm(); },
                        [&](const Ellipsoid& E) {
                          Vec w = E.frame().transpose() * v;
                          return E.center().dot(v) + w.cwiseProduct(E.semi_axes()).norm();
                        },
                    },
                    K);
}

Interval clip(const Body& K, const Vec& z, const Vec& u) {
  return std::visit(overloaded{
                        [&](const HPolytope& P) { return P.clip(z, u); },
                        [&](const VPolytope& P) { return P.hrep().clip(z, u); },
                        [&](const Ball& B) {
                          Vec y = z - B.center;
                          return quadratic_interval(u.squaredNorm(), 2.0 * y.dot(u),
                                                    y.squaredNorm() - B.radius * B.radius);
                        },
                        [&](const Ellipsoid& E) {
                          Vec y = E.to_local(z);
                          Vec w = E.frame().transpose() * u;
                          const Vec& a = E.semi_axes();
                          double A = 0, B = 0, C = -1.0;
                          for (int i = 0; i < y.size(); ++i) {
                            const double ia = 1.0 / (a[i] * a[i]);
                            A += w[i] * w[i] * ia;
                            B += 2.0 * y[i] * w[i] * ia;
                            C += y[i] * y[i] * ia;
                          }
                          return quadratic_interval(A, B, C);
                        },
                    },
                    K);
}

double radial_extended(const Body& K, const Vec& z, const Vec& u) {
  Interval I = clip(K, z, u);
  return I.empty() ? 0.0 : I.hi;
}

double xray(const Body& K, const Vec& x, const Vec& u) { return clip(K, x, u).length(); }

double volume(const Body& K) {
  return std::visit(overloaded{
                        [](const HPolytope& P) { return P.volume(); },
                        [](const VPolytope& P) { return P.hrep().volume(); },
                        [](const Ball& B) { return omega(B.dim()) * std::pow(B.radius, B.dim()); },
                        [](const Ellipsoid& E) { return omega(E.dim()) * E.semi_axes().prod(); },
                    },
                    K);
}

double surface_area(const Body& K) {
  return std::visit(overloaded{
                        [](const HPolytope& P) { return P.surface_area(); },
                        [](const VPolytope& P) { return P.hrep().surface_area(); },
                        [](const Ball& B) {
                          const int n = B.dim();
                          return n * omega(n) * std::pow(B.radius, n - 1);
                        },
                        [](const Ellipsoid& E) {
                          const int n = E.dim();
                          const Vec& a = E.semi_axes();
                          auto Q = n <= 3 ? SphereQuadrature::product_grid(n, 96, 192)
                                          : SphereQuadrature::product_grid(n, 24, 48);
                          double s = 0.0;
                          for (int k = 0; k < Q.size(); ++k) s += Q.weights[k] * Q.nodes[k].cwiseQuotient(a).norm();
                          return a.prod() * s;
                        },
                    },
                    K);
}

double diameter(const Body& K) {
  return std::visit(overloaded{
                        [](const HPolytope& P) { return P.diameter(); },
                        [](const VPolytope& P) { return P.hrep().diameter(); },
                        [](const Ball& B) { return 2.0 * B.radius; },
                        [](const Ellipsoid& E) { return 2.0 * E.semi_axes().maxCoeff(); },
                    },
                    K);
}

Vec reference_center(const Body& K) {
  return std::visit(overloaded{
                        [](const HPolytope& P) { return Vec(P.centroid()); },
                        [](const VPolytope& P) { return Vec(P.hrep().centroid()); },
                        [](const Ball& B) { return B.center; },
                        [](const Ellipsoid& E) { return E.center(); },
                    },
                    K);
}

double circumradius(const Body& K, const Vec& c) {
  return std::visit(overloaded{
                        [&](const HPolytope& P) { return P.circumradius(c); },
                        [&](const VPolytope& P) { return P.hrep().circumradius(c); },
                        [&](const Ball& B) { return (B.center - c).norm() + B.radius; },
                        [&](const Ellipsoid& E) { return (E.center() - c).norm() + E.semi_axes().maxCoeff(); },
                    },
                    K);
}

double boundary_level(const Body& K, const Vec& x) {
  return std::visit(overloaded{
                        [&](const HPolytope& P) { return P.violation(x); },
                        [&](const VPolytope& P) { return P.hrep().violation(x); },
                        [&](const Ball& B) { return (x - B.center).norm() - B.radius; },
                        [&](const Ellipsoid& E) {
                          Vec y = E.to_local(x);
                          return (y.cwiseQuotient(E.semi_axes()).norm() - 1.0) * E.semi_axes().minCoeff();
                        },
                    },
                    K);
}

Vec outer_normal(const Body& K, const Vec& z) {
  return std::visit(overloaded{
                        [&](const HPolytope& P) {
                          int best = -1;
                          double bv = -std::numeric_limits<double>::infinity();
                          for (int i = 0; i < P.size(); ++i) {
                            if (P.redundant(i)) continue;
                            double v = P.A().row(i).dot(z) - P.h()[i];
                            if (v > bv) {
                              bv = v;
                              best = i;
                            }
                          }
                          return Vec(P.normals()[best]);
                        },
                        [&](const VPolytope& P) { return outer_normal(Body(P.hrep()), z); },
                        [&](const Ball& B) { return Vec((z - B.center).normalized()); },
                        [&](const Ellipsoid& E) {
                          Vec y = E.to_local(z);
                          const Vec& a = E.semi_axes();
                          Vec g = y.cwiseQuotient(a.cwiseProduct(a));
                          return Vec((E.frame() * g).normalized());
                        },
                    },
                    K);
}

std::pair<Vec, Vec> bounding_box(const Body& K) {
  const int n = dim(K);
  Vec lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    Vec e = Vec::Unit(n, j);
    hi[j] = support(K, e);
    lo[j] = -support(K, -e);
  }
  return {lo, hi};
}

Body translate(const Body& K, const Vec& y) {
  return std::visit(overloaded{
                        [&](const HPolytope& P) { return Body(P.translated(y)); },
                        [&](const VPolytope& P) {
                          std::vector<Vec> v = P.vertices();
                          for (Vec& x : v) x += y;
                          return Body(VPolytope(v));
                        },
                        [&](const Ball& B) { return Body(Ball(B.center + y, B.radius)); },
                        [&](const Ellipsoid& E) { return Body(Ellipsoid(E.center() + y, E.semi_axes(), E.frame())); },
                    },
                    K);
}

Body scale(const Body& K, double t) {
  return std::visit(overloaded{
                        [&](const HPolytope& P) { return Body(P.scaled(t)); },
                        [&](const VPolytope& P) {
                          std::vector<Vec> v = P.vertices();
                          for (Vec& x : v) x *= t;
                          return Body(VPolytope(v));
                        },
                        [&](const Ball& B) { return Body(Ball(t * B.center, t * B.radius)); },
                        [&](const Ellipsoid& E) { return Body(Ellipsoid(t * E.center(), t * E.semi_axes(), E.frame())); },
                    },
                    K);
}

double hausdorff_distance(const Body& K, const Body& L, int grid_nodes) {
  const int n = dim(K);
  if (dim(L) != n) throw Error(ErrorCode::Precondition, "dimension mismatch");
  auto Q = n <= 3 ? SphereQuadrature::product_grid(n, grid_nodes, 2 * grid_nodes)
                  : SphereQuadrature::product_grid(n, std::max(6, grid_nodes / 4), std::max(12, grid_nodes / 2));
  std::vector<Vec> dirs = Q.nodes;
  for (const Body* B : {&K, &L})
    if (const HPolytope* P = as_polytope(*B))
      for (const Vec& u : P->normals()) dirs.push_back(u);
  double d = 0.0;
  for (const Vec& v : dirs) d = std::max(d, std::abs(support(K, v) - support(L, v)));
  return d;
}

double ellipsoid_mean_curvature(const Ellipsoid& E, const Vec& z) {
  const int n = E.dim();
  Vec y = E.to_local(z);
  const Vec& a = E.semi_axes();
  Vec Ad = a.cwiseProduct(a).cwiseInverse();
  Vec g = y.cwiseProduct(Ad);
  const double gn = g.norm();
  Vec N = g / gn;
  const double nan = N.cwiseProduct(Ad).dot(N);
  return (Ad.sum() - nan) / ((n - 1) * gn);
}

}  // namespace chordgeom
