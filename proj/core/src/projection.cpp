#include "chordgeom/projection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "chordgeom/parallel.hpp"
#include "chordgeom/quadrature.hpp"

namespace chordgeom {

namespace {

// Complete homogeneous symmetric polynomials h_0..h_K of (d1, d2, d3).
std::array<double, 10> complete_h(double d1, double d2, double d3, int K) {
  std::array<double, 10> h2{}, h3{};
  for (int j = 0; j <= K; ++j) {
    double s = 0.0, p2 = 1.0;
    for (int b = 0; b <= j; ++b) {
      s += p2 * std::pow(d3, j - b);
      p2 *= d2;
    }
    h2[j] = s;
  }
  for (int k = 0; k <= K; ++k) {
    double s = 0.0, p1 = 1.0;
    for (int a = 0; a <= k; ++a) {
      s += p1 * h2[k - a];
      p1 *= d1;
    }
    h3[k] = s;
  }
  return h3;
}

// Divided difference (G(x) - G(y)) / (x - y), G(s) = s^e / e, x > y >= 0.
double stable_dd(double x, double y, double e) {
  const double r = (y - x) / x;
  const double ratio = -std::expm1(e * std::log1p(r));
  return std::pow(x, e) / e * ratio / (x - y);
}

constexpr int kSeries = 9;
constexpr double kSpread = 1e-2;

}  // namespace

double triangle_power_integral(double a, double b, double c, double area, double p) {
  a = std::max(a, 0.0);
  b = std::max(b, 0.0);
  c = std::max(c, 0.0);
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  if (area <= 0.0 || a <= 0.0) return 0.0;
  if (a - c <= kSpread * a) {
    const double m = (a + b + c) / 3.0;
    auto h = complete_h(a - m, b - m, c - m, kSeries);
    double sum = 0.0, coef = 1.0, mp = std::pow(m, p);
    for (int k = 0; k <= kSeries; ++k) {
      if (k > 0) {
        coef *= (p - k + 1) / k;
        mp /= m;
      }
      const double moment = 2.0 / ((k + 1.0) * (k + 2.0)) * h[k];
      sum += coef * mp * moment;
    }
    return area * sum;
  }
  // 2 A g[a, b, c] with g(s) = s^{p+2} / ((p+1)(p+2)).
  auto g1 = [&](double x, double y) {
    if (x - y <= 1e-300) return std::pow(x, p + 1.0) / (p + 1.0);
    return stable_dd(x, y, p + 2.0) / (p + 1.0);
  };
  const double ab = g1(a, b);
  const double bc = b > 0.0 ? g1(b, c) : 0.0;
  return 2.0 * area * (ab - bc) / (a - c);
}

double segment_power_integral(double a, double b, double len, double p) {
  a = std::max(a, 0.0);
  b = std::max(b, 0.0);
  if (a < b) std::swap(a, b);
  if (len <= 0.0 || a <= 0.0) return 0.0;
  if (a - b <= kSpread * a) {
    const double m = 0.5 * (a + b), d = 0.5 * (a - b);
    double sum = 0.0, coef = 1.0, mp = std::pow(m, p), dk = 1.0;
    for (int k = 0; k <= kSeries; ++k) {
      if (k > 0) {
        coef *= (p - k + 1) / k;
        mp /= m;
        dk *= d;
      }
      if (k % 2 == 0) sum += coef * mp * dk / (k + 1.0);
    }
    return len * sum;
  }
  return len * stable_dd(a, b, p + 1.0);
}

namespace {

// Divided difference over x[lo..hi] (sorted descending) of G_j(s) = s^{p+j} / ((p+1)...(p+j)).
double power_dd(const std::vector<double>& x, int lo, int hi, int j, double p) {
  const int k = hi - lo;
  double norm = 1.0;
  for (int i = 1; i <= j - k; ++i) norm *= p + i;
  if (k == 0) return x[lo] > 0.0 ? std::pow(x[lo], p + j) / norm : 0.0;
  const double a = x[lo], b = x[hi];
  if (a <= 0.0) return 0.0;
  if (a - b <= kSpread * a) {
    // G_j[S] = (1/k!) E[G_{j-k}^{(0)}(sum lambda x)] expanded about the mean.
    double m = 0.0;
    for (int i = lo; i <= hi; ++i) m += x[i];
    m /= k + 1;
    std::vector<double> hs(kSeries + 1, 0.0);
    hs[0] = 1.0;
    for (int i = lo; i <= hi; ++i) {
      const double d = x[i] - m;
      for (int r = 1; r <= kSeries; ++r) hs[r] += d * hs[r - 1];
    }
    const double e = p + j - k;
    double sum = 0.0, ff = 1.0, rfact = 1.0, mp = std::pow(m, e), ratio = 1.0;
    for (int r = 0; r <= kSeries; ++r) {
      if (r > 0) {
        ff *= e - r + 1;
        rfact *= r;
        mp /= m;
        ratio *= static_cast<double>(r) / (r + k);
      }
      sum += ff / rfact * mp * ratio * hs[r];
    }
    double kf = 1.0;
    for (int i = 2; i <= k; ++i) kf *= i;
    return sum / (norm * kf);
  }
  if (k == 1) {
    double nrm = 1.0;
    for (int i = 1; i < j; ++i) nrm *= p + i;
    if (b <= 0.0) return std::pow(a, p + j) / (nrm * (p + j)) / a;
    return stable_dd(a, b, p + j) / nrm;
  }
  return (power_dd(x, lo, hi - 1, j, p) - power_dd(x, lo + 1, hi, j, p)) / (a - b);
}

}  // namespace

namespace {

double simplex_power_inplace(std::vector<double>& values, double volume, double p) {
  if (volume <= 0.0) return 0.0;
  for (double& v : values) v = std::max(v, 0.0);
  std::sort(values.begin(), values.end(), std::greater<>());
  const int d = static_cast<int>(values.size()) - 1;
  double df = 1.0;
  for (int i = 2; i <= d; ++i) df *= i;
  return df * volume * power_dd(values, 0, d, d, p);
}

}  // namespace

double simplex_power_integral(std::vector<double> values, double volume, double p) {
  return simplex_power_inplace(values, volume, p);
}

namespace {

using P2 = std::array<double, 2>;

double cross(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

void clip_convex(const std::vector<P2>& subject, const std::vector<P2>& clipper, std::vector<P2>& out,
                 std::vector<P2>& tmp) {
  out = subject;
  const std::size_t m = clipper.size();
  for (std::size_t e = 0; e < m && !out.empty(); ++e) {
    const P2& A = clipper[e];
    const P2& B = clipper[(e + 1) % m];
    tmp.clear();
    const std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) {
      const P2& P = out[i];
      const P2& Q = out[(i + 1) % k];
      const double sp = cross(A, B, P);
      const double sq = cross(A, B, Q);
      if (sp >= 0) tmp.push_back(P);
      if ((sp >= 0) != (sq >= 0)) {
        const double t = sp / (sp - sq);
        tmp.push_back({P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1])});
      }
    }
    std::swap(out, tmp);
  }
}

struct Projected {
  int facet;
  double s;
  double alpha, b1, b2;  // height t(a, b) = alpha + b1 a + b2 b
  std::vector<P2> poly;
  double lo0, hi0, lo1, hi1;
};

struct Workspace {
  std::vector<Projected> lower, upper;
  std::vector<P2> clipped, tmp;
};

double direction_3d(const HPolytope& P, const std::vector<std::vector<int>>& fidx, const Vec& u, double p,
                    std::vector<double>* grad, Workspace& ws) {
  Mat B = orthonormal_complement(u);
  const Vec e1 = B.col(0), e2 = B.col(1);
  const auto& V = P.vertices();
  std::vector<P2> proj(V.size());
  for (std::size_t k = 0; k < V.size(); ++k) proj[k] = {V[k].dot(e1), V[k].dot(e2)};
  ws.lower.clear();
  ws.upper.clear();
  for (int i = 0; i < P.size(); ++i) {
    if (P.redundant(i)) continue;
    const Vec& nu = P.normals()[i];
    const double s = nu.dot(u);
    if (std::abs(s) < 1e-13) continue;
    Projected f;
    f.facet = i;
    f.s = s;
    f.alpha = P.h()[i] / s;
    f.b1 = -nu.dot(e1) / s;
    f.b2 = -nu.dot(e2) / s;
    for (int k : fidx[i]) f.poly.push_back(proj[k]);
    double area2 = 0.0;
    for (std::size_t k = 1; k + 1 < f.poly.size(); ++k) area2 += cross(f.poly[0], f.poly[k], f.poly[k + 1]);
    if (area2 < 0) std::reverse(f.poly.begin(), f.poly.end());
    f.lo0 = f.hi0 = f.poly[0][0];
    f.lo1 = f.hi1 = f.poly[0][1];
    for (const P2& q : f.poly) {
      f.lo0 = std::min(f.lo0, q[0]);
      f.hi0 = std::max(f.hi0, q[0]);
      f.lo1 = std::min(f.lo1, q[1]);
      f.hi1 = std::max(f.hi1, q[1]);
    }
    (s < 0 ? ws.lower : ws.upper).push_back(std::move(f));
  }
  double total = 0.0;
  for (const Projected& L : ws.lower) {
    for (const Projected& U : ws.upper) {
      if (L.hi0 < U.lo0 || U.hi0 < L.lo0 || L.hi1 < U.lo1 || U.hi1 < L.lo1) continue;
      clip_convex(L.poly, U.poly, ws.clipped, ws.tmp);
      const auto& C = ws.clipped;
      if (C.size() < 3) continue;
      const double da = U.alpha - L.alpha, d1 = U.b1 - L.b1, d2 = U.b2 - L.b2;
      auto X = [&](const P2& x) { return da + d1 * x[0] + d2 * x[1]; };
      const double x0 = X(C[0]);
      double val = 0.0, dval = 0.0;
      for (std::size_t k = 1; k + 1 < C.size(); ++k) {
        const double area = 0.5 * cross(C[0], C[k], C[k + 1]);
        if (area <= 0.0) continue;
        const double xa = X(C[k]), xb = X(C[k + 1]);
        val += triangle_power_integral(x0, xa, xb, area, p);
        if (grad) dval += triangle_power_integral(x0, xa, xb, area, p - 1.0);
      }
      total += val;
      if (grad) {
        (*grad)[L.facet] += p * dval / std::abs(L.s);
        (*grad)[U.facet] += p * dval / std::abs(U.s);
      }
    }
  }
  return total;
}

double direction_2d(const HPolytope& P, const std::vector<std::vector<int>>& fidx, const Vec& u, double p,
                    std::vector<double>* grad) {
  Vec e(2);
  e << -u[1], u[0];
  const auto& V = P.vertices();
  struct Seg {
    int facet;
    double s, alpha, beta, lo, hi;
  };
  std::vector<Seg> lower, upper;
  for (int i = 0; i < P.size(); ++i) {
    if (P.redundant(i)) continue;
    const Vec& nu = P.normals()[i];
    const double s = nu.dot(u);
    if (std::abs(s) < 1e-13) continue;
    const double a0 = V[fidx[i][0]].dot(e), a1 = V[fidx[i][1]].dot(e);
    Seg g{i, s, P.h()[i] / s, -nu.dot(e) / s, std::min(a0, a1), std::max(a0, a1)};
    (s < 0 ? lower : upper).push_back(g);
  }
  double total = 0.0;
  for (const Seg& L : lower)
    for (const Seg& U : upper) {
      const double lo = std::max(L.lo, U.lo), hi = std::min(L.hi, U.hi);
      if (!(hi > lo)) continue;
      const double da = U.alpha - L.alpha, db = U.beta - L.beta;
      const double xa = da + db * lo, xb = da + db * hi;
      total += segment_power_integral(xa, xb, hi - lo, p);
      if (grad) {
        const double d = p * segment_power_integral(xa, xb, hi - lo, p - 1.0);
        (*grad)[L.facet] += d / std::abs(L.s);
        (*grad)[U.facet] += d / std::abs(U.s);
      }
    }
  return total;
}

using P3 = Eigen::Vector3d;

// Faces stored flat: face f is pts[start[f] .. start[f+1]).
struct Polyhedron {
  std::vector<P3> pts;
  std::vector<int> start{0};
  int faces() const { return static_cast<int>(start.size()) - 1; }
  void clear() {
    pts.clear();
    start.assign(1, 0);
  }
  void close_face() { start.push_back(static_cast<int>(pts.size())); }
};

struct Plane {
  P3 c;
  double d;
};

Polyhedron box3(const P3& lo, const P3& hi) {
  auto v = [&](int i, int j, int k) { return P3(i ? hi[0] : lo[0], j ? hi[1] : lo[1], k ? hi[2] : lo[2]); };
  const std::array<std::array<P3, 4>, 6> faces = {{{v(0, 0, 0), v(0, 1, 0), v(0, 1, 1), v(0, 0, 1)},
                                                   {v(1, 0, 0), v(1, 0, 1), v(1, 1, 1), v(1, 1, 0)},
                                                   {v(0, 0, 0), v(0, 0, 1), v(1, 0, 1), v(1, 0, 0)},
                                                   {v(0, 1, 0), v(1, 1, 0), v(1, 1, 1), v(0, 1, 1)},
                                                   {v(0, 0, 0), v(1, 0, 0), v(1, 1, 0), v(0, 1, 0)},
                                                   {v(0, 0, 1), v(0, 1, 1), v(1, 1, 1), v(1, 0, 1)}}};
  Polyhedron B;
  for (const auto& f : faces) {
    for (const P3& y : f) B.pts.push_back(y);
    B.close_face();
  }
  return B;
}

struct ClipScratch {
  std::vector<P3> cap, ring;
  std::vector<double> sd;
  std::vector<std::pair<double, int>> order;
  Polyhedron out;
};

// Keeps {y : c.y <= d}; |c| = 1.
void clip_halfspace(Polyhedron& P, const Plane& H, double eps, ClipScratch& w) {
  w.sd.resize(P.pts.size());
  double smax = -std::numeric_limits<double>::infinity(), smin = -smax;
  for (std::size_t i = 0; i < P.pts.size(); ++i) {
    const double sd = H.c.dot(P.pts[i]) - H.d;
    w.sd[i] = sd;
    smax = std::max(smax, sd);
    smin = std::min(smin, sd);
  }
  if (smax <= eps) return;
  if (smin > eps) {
    P.clear();
    return;
  }
  w.cap.clear();
  w.out.clear();
  for (int f = 0; f < P.faces(); ++f) {
    const int s0 = P.start[f], k = P.start[f + 1] - s0;
    const int before = static_cast<int>(w.out.pts.size());
    for (int i = 0; i < k; ++i) {
      const int ia = s0 + i, ib = s0 + (i + 1) % k;
      const P3& a = P.pts[ia];
      const double sa = w.sd[ia], sb = w.sd[ib];
      const bool ain = sa <= eps, bin = sb <= eps;
      if (ain) w.out.pts.push_back(a);
      if (ain != bin) {
        const P3 x = a + (sa / (sa - sb)) * (P.pts[ib] - a);
        w.out.pts.push_back(x);
        w.cap.push_back(x);
      }
    }
    if (static_cast<int>(w.out.pts.size()) - before >= 3)
      w.out.close_face();
    else
      w.out.pts.resize(before);
  }
  if (w.cap.size() >= 3) {
    P3 m = P3::Zero();
    for (const P3& x : w.cap) m += x;
    m /= static_cast<double>(w.cap.size());
    P3 a = std::abs(H.c[0]) < 0.9 ? P3::UnitX() : P3::UnitY();
    a = (a - H.c * H.c.dot(a)).normalized();
    const P3 b = H.c.cross(a);
    w.order.clear();
    for (int i = 0; i < static_cast<int>(w.cap.size()); ++i) {
      const P3 r = w.cap[i] - m;
      w.order.emplace_back(std::atan2(r.dot(b), r.dot(a)), i);
    }
    std::sort(w.order.begin(), w.order.end());
    w.ring.clear();
    for (const auto& [ang, i] : w.order)
      if (w.ring.empty() || (w.cap[i] - w.ring.back()).norm() > eps) w.ring.push_back(w.cap[i]);
    if (w.ring.size() >= 2 && (w.ring.front() - w.ring.back()).norm() <= eps) w.ring.pop_back();
    if (w.ring.size() >= 3) {
      for (const P3& y : w.ring) w.out.pts.push_back(y);
      w.out.close_face();
    }
  }
  std::swap(P.pts, w.out.pts);
  std::swap(P.start, w.out.start);
}

struct Cell {
  int facet;
  double s;
  double alpha;
  P3 b;  // height t(y) = alpha + b.y
  std::vector<Plane> planes;
  Polyhedron poly;
  P3 lo, hi;
};

struct Workspace4 {
  std::vector<Cell> lower, upper;
  Polyhedron work;
  ClipScratch scratch;
  std::vector<double> vals;
};

double direction_4d(const HPolytope& P, const std::vector<std::vector<int>>& fidx,
                    const std::vector<std::vector<int>>& adj, const Vec& u, double p, std::vector<double>* grad,
                    Workspace4& ws) {
  const Mat B = orthonormal_complement(u);
  const auto& V = P.vertices();
  const double eps = 1e-12 * P.diameter();
  std::vector<P3> proj(V.size());
  for (std::size_t k = 0; k < V.size(); ++k) proj[k] = B.transpose() * V[k];
  ws.lower.clear();
  ws.upper.clear();
  for (int i = 0; i < P.size(); ++i) {
    if (P.redundant(i)) continue;
    const Vec& nu = P.normals()[i];
    const double s = nu.dot(u);
    if (std::abs(s) < 1e-13) continue;
    Cell c;
    c.facet = i;
    c.s = s;
    c.alpha = P.h()[i] / s;
    c.b = -(B.transpose() * nu) / s;
    for (int k : adj[i]) {
      const double uk = P.normals()[k].dot(u);
      P3 cc = B.transpose() * P.normals()[k] + uk * c.b;
      double d = P.h()[k] - uk * c.alpha;
      const double len = cc.norm();
      if (len < 1e-14) continue;
      c.planes.push_back({cc / len, d / len});
    }
    P3 lo = proj[fidx[i][0]], hi = lo;
    for (int k : fidx[i]) {
      lo = lo.cwiseMin(proj[k]);
      hi = hi.cwiseMax(proj[k]);
    }
    const P3 pad = P3::Constant(1e-9 * P.diameter());
    c.poly = box3(lo - pad, hi + pad);
    for (const Plane& H : c.planes) clip_halfspace(c.poly, H, eps, ws.scratch);
    c.lo = lo;
    c.hi = hi;
    (s < 0 ? ws.lower : ws.upper).push_back(std::move(c));
  }
  double total = 0.0;
  for (const Cell& L : ws.lower) {
    for (const Cell& U : ws.upper) {
      if ((L.hi.array() < U.lo.array()).any() || (U.hi.array() < L.lo.array()).any()) continue;
      ws.work = L.poly;
      for (const Plane& H : U.planes) {
        clip_halfspace(ws.work, H, eps, ws.scratch);
        if (ws.work.faces() < 4) break;
      }
      if (ws.work.faces() < 4) continue;
      const double da = U.alpha - L.alpha;
      const P3 db = U.b - L.b;
      auto X = [&](const P3& y) { return da + db.dot(y); };
      P3 apex = P3::Zero();
      for (const P3& y : ws.work.pts) apex += y;
      apex /= static_cast<double>(ws.work.pts.size());
      const double xa = X(apex);
      double val = 0.0, dval = 0.0;
      for (int fi = 0; fi < ws.work.faces(); ++fi) {
        const P3* f = ws.work.pts.data() + ws.work.start[fi];
        const int fs = ws.work.start[fi + 1] - ws.work.start[fi];
        const double x0 = X(f[0]);
        for (int k = 1; k + 1 < fs; ++k) {
          const double vol = std::abs((f[0] - apex).dot((f[k] - apex).cross(f[k + 1] - apex))) / 6.0;
          if (vol <= 0.0) continue;
          const double x1 = X(f[k]), x2 = X(f[k + 1]);
          ws.vals.assign({xa, x0, x1, x2});
          val += simplex_power_inplace(ws.vals, vol, p);
          if (grad) {
            ws.vals.assign({xa, x0, x1, x2});
            dval += simplex_power_inplace(ws.vals, vol, p - 1.0);
          }
        }
      }
      total += val;
      if (grad) {
        (*grad)[L.facet] += p * dval / std::abs(L.s);
        (*grad)[U.facet] += p * dval / std::abs(U.s);
      }
    }
  }
  return total;
}

std::vector<std::vector<int>> facet_adjacency(const HPolytope& P, const std::vector<std::vector<int>>& fidx) {
  const int m = P.size();
  std::vector<std::vector<int>> adj(m);
  for (int i = 0; i < m; ++i) {
    if (P.redundant(i)) continue;
    for (int k = 0; k < m; ++k) {
      if (k == i || P.redundant(k)) continue;
      int shared = 0;
      for (int a : fidx[i])
        if (std::find(fidx[k].begin(), fidx[k].end(), a) != fidx[k].end()) ++shared;
      if (shared >= P.dim() - 1) adj[i].push_back(k);
    }
  }
  return adj;
}

std::vector<std::vector<int>> facet_vertex_indices(const HPolytope& P) {
  const auto& V = P.vertices();
  std::vector<std::vector<int>> out(P.size());
  for (int i = 0; i < P.size(); ++i) {
    const auto& F = P.facets()[i];
    if (F.redundant) continue;
    for (const Vec& x : F.vertices) {
      int best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (int k = 0; k < static_cast<int>(V.size()); ++k) {
        const double d = (V[k] - x).squaredNorm();
        if (d < bd) {
          bd = d;
          best = k;
        }
      }
      out[i].push_back(best);
    }
    if (P.dim() == 2 && out[i].size() > 2) {
      // Keep the extreme pair of the edge.
      int a = out[i][0], b = out[i][0];
      double dmax = -1.0;
      for (int x : out[i])
        for (int y : out[i])
          if ((V[x] - V[y]).squaredNorm() > dmax) {
            dmax = (V[x] - V[y]).squaredNorm();
            a = x;
            b = y;
          }
      out[i] = {a, b};
    }
  }
  return out;
}

void check_dim(const HPolytope& P) {
  if (P.dim() < 2 || P.dim() > 4)
    throw Error(ErrorCode::Precondition, "projection integrator supports n = 2, 3, 4");
}

}  // namespace

double projection_directional(const HPolytope& P, const Vec& u, double p, std::vector<double>* grad) {
  check_dim(P);
  auto fidx = facet_vertex_indices(P);
  if (grad) grad->assign(P.size(), 0.0);
  const Vec uu = u.normalized();
  if (P.dim() == 2) return direction_2d(P, fidx, uu, p, grad);
  if (P.dim() == 4) {
    Workspace4 ws4;
    return direction_4d(P, fidx, facet_adjacency(P, fidx), uu, p, grad, ws4);
  }
  Workspace ws;
  return direction_3d(P, fidx, uu, p, grad, ws);
}

// The sharp part of u -> I_q(P, u) is the band of directions orthogonal to the thinnest
// principal axis, where the Gauss-Legendre nodes in theta cluster.
Vec principal_pole(const HPolytope& P) {
  const int n = P.dim();
  Mat C = Mat::Zero(n, n);
  for (const Vec& v : P.vertices()) C += (v - P.centroid()) * (v - P.centroid()).transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(C);
  Vec pole = es.eigenvectors().col(0);
  int lead = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(pole[i]) > std::abs(pole[lead]) + 1e-12) lead = i;
  if (pole[lead] < 0) pole = -pole;
  return pole;
}

PolytopeChordData projection_chord(const HPolytope& P, double q, const ProjectionConfig& cfg, bool with_measure) {
  check_dim(P);
  if (P.dim() == 4 && cfg.n4_richardson) {
    ProjectionConfig plain = cfg;
    plain.n4_richardson = false;
    ProjectionConfig half = plain;
    half.n4_theta = std::max(2, cfg.n4_theta / 2);
    half.n4_phi = std::max(4, cfg.n4_phi / 2);
    auto fine = projection_chord(P, q, plain, with_measure);
    const auto coarse = projection_chord(P, q, half, with_measure);
    fine.I = (4.0 * fine.I - coarse.I) / 3.0;
    for (std::size_t i = 0; i < fine.F.size(); ++i) fine.F[i] = (4.0 * fine.F[i] - coarse.F[i]) / 3.0;
    fine.directions += coarse.directions;
    return fine;
  }
  if (!(q > 0.0)) throw Error(ErrorCode::Precondition, "projection integrator needs q > 0");
  const int n = P.dim();
  auto fidx = facet_vertex_indices(P);
  const auto adj = n == 4 ? facet_adjacency(P, fidx) : std::vector<std::vector<int>>{};
  std::vector<Vec> dirs;
  std::vector<double> w;
  if (n == 2) {
    for (int k = 0; k < cfg.n_circle; ++k) {
      const double phi = std::numbers::pi * (k + 0.5) / cfg.n_circle;
      Vec u(2);
      u << std::cos(phi), std::sin(phi);
      dirs.push_back(u);
      w.push_back(std::numbers::pi / cfg.n_circle);
    }
  } else if (n == 4) {
    const Vec pole = cfg.n4_pole ? cfg.n4_pole->normalized() : principal_pole(P);
    HemisphereRule R = hemisphere_grid(pole, cfg.n4_theta, cfg.n4_phi);
    dirs = R.nodes;
    w = R.weights;
  } else {
    Rule1D g = gauss_legendre(cfg.n_theta, 0.0, 1.0);
    for (int i = 0; i < cfg.n_theta; ++i) {
      const double ct = g.x[i], st = std::sqrt(1.0 - ct * ct);
      for (int k = 0; k < cfg.n_phi; ++k) {
        const double phi = 2.0 * std::numbers::pi * (k + 0.5) / cfg.n_phi;
        Vec u(3);
        u << st * std::cos(phi), st * std::sin(phi), ct;
        dirs.push_back(u);
        w.push_back(g.w[i] * 2.0 * std::numbers::pi / cfg.n_phi);
      }
    }
  }
  const int D = static_cast<int>(dirs.size());
  const int m = P.size();
  // Fixed chunking keeps the reduction order independent of the thread count.
  const int chunks = std::min(D, 64);
  std::vector<double> part_I(chunks, 0.0);
  std::vector<std::vector<double>> part_F(chunks, std::vector<double>(with_measure ? m : 0, 0.0));
  parallel_for(chunks, [&](int c) {
    Workspace ws;
    Workspace4 ws4;
    std::vector<double> grad(m);
    const int lo = static_cast<int>(static_cast<long>(D) * c / chunks);
    const int hi = static_cast<int>(static_cast<long>(D) * (c + 1) / chunks);
    for (int k = lo; k < hi; ++k) {
      std::fill(grad.begin(), grad.end(), 0.0);
      std::vector<double>* gp = with_measure ? &grad : nullptr;
      const double v = n == 2   ? direction_2d(P, fidx, dirs[k], q, gp)
                       : n == 3 ? direction_3d(P, fidx, dirs[k], q, gp, ws)
                                : direction_4d(P, fidx, adj, dirs[k], q, gp, ws4);
      part_I[c] += w[k] * v;
      if (with_measure)
        for (int i = 0; i < m; ++i) part_F[c][i] += w[k] * grad[i];
    }
  });
  // Both hemispheres contribute equally: I_q(K, u) = I_q(K, -u).
  const double norm = 2.0 / (n * omega(n));
  PolytopeChordData out;
  out.directions = 2 * D;
  for (int c = 0; c < chunks; ++c) out.I += part_I[c];
  out.I *= norm;
  if (with_measure) {
    out.F.assign(m, 0.0);
    for (int c = 0; c < chunks; ++c)
      for (int i = 0; i < m; ++i) out.F[i] += part_F[c][i];
    for (double& f : out.F) f *= norm;
  }
  return out;
}

}  // namespace chordgeom
