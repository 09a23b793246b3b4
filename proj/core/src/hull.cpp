#include "hull.hpp"

#include <algorithm>
#include <cmath>

namespace chordgeom::detail {

int affine_rank(const std::vector<Vec>& pts, const std::vector<int>& idx, double tol) {
  if (idx.size() <= 1) return 0;
  const int n = static_cast<int>(pts[idx[0]].size());
  Mat E(n, idx.size() - 1);
  for (std::size_t k = 1; k < idx.size(); ++k) E.col(k - 1) = pts[idx[k]] - pts[idx[0]];
  Eigen::JacobiSVD<Mat> svd(E);
  const Vec& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol) ++r;
  return r;
}

Chebyshev chebyshev_ball(const Mat& A, const Vec& h) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  Chebyshev best;
  best.center = Vec::Zero(n);
  best.radius = -std::numeric_limits<double>::infinity();
  double scale = h.cwiseAbs().maxCoeff();
  if (scale <= 0) scale = 1.0;
  Mat M(n + 1, n + 1);
  Vec rhs(n + 1);
  for_each_subset(m, n + 1, [&](const std::vector<int>& S) {
    for (int r = 0; r <= n; ++r) {
      M.row(r).head(n) = A.row(S[r]);
      M(r, n) = 1.0;
      rhs[r] = h[S[r]];
    }
    Eigen::FullPivLU<Mat> lu(M);
    if (lu.rank() < n + 1) return;
    Vec y = lu.solve(rhs);
    const double r = y[n];
    if (r <= best.radius) return;
    Vec x = y.head(n);
    if (((A * x).array() + r - h.array()).maxCoeff() > 1e-10 * scale) return;
    best.radius = r;
    best.center = x;
  });
  return best;
}

std::vector<Vec> enumerate_vertices(const Mat& A, const Vec& h, double tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  std::vector<Vec> out;
  Mat M(n, n);
  Vec rhs(n);
  for_each_subset(m, n, [&](const std::vector<int>& S) {
    for (int r = 0; r < n; ++r) {
      M.row(r) = A.row(S[r]);
      rhs[r] = h[S[r]];
    }
    Eigen::FullPivLU<Mat> lu(M);
    if (lu.rank() < n) return;
    Vec x = lu.solve(rhs);
    if (((A * x) - h).maxCoeff() > tol) return;
    for (const Vec& v : out)
      if ((v - x).norm() <= tol) return;
    out.push_back(x);
  });
  return out;
}

std::vector<std::pair<Vec, double>> hull_facets(const std::vector<Vec>& points, double tol) {
  std::vector<std::pair<Vec, double>> out;
  if (points.empty()) return out;
  const int n = static_cast<int>(points[0].size());
  const int k = static_cast<int>(points.size());
  Vec mean = Vec::Zero(n);
  for (const Vec& p : points) mean += p;
  mean /= k;
  for_each_subset(k, n, [&](const std::vector<int>& S) {
    Mat E(n - 1, n);
    for (int r = 1; r < n; ++r) E.row(r - 1) = (points[S[r]] - points[S[0]]).transpose();
    Eigen::FullPivLU<Mat> lu(E);
    if (n > 1 && lu.rank() < n - 1) return;
    Mat K = lu.kernel();
    if (K.cols() != 1) return;
    Vec a = K.col(0).normalized();
    double b = a.dot(points[S[0]]);
    if (a.dot(mean) > b) {
      a = -a;
      b = -b;
    }
    for (const Vec& p : points)
      if (a.dot(p) > b + tol) return;
    for (const auto& [a2, b2] : out)
      if ((a2 - a).norm() < 1e-9 && std::abs(b2 - b) <= tol) return;
    out.emplace_back(a, b);
  });
  return out;
}

bool positively_spanning(const std::vector<Vec>& normals) {
  if (normals.empty()) return false;
  const int n = static_cast<int>(normals[0].size());
  if (static_cast<int>(normals.size()) < n + 1) return false;
  std::vector<int> all(normals.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (affine_rank(normals, all, 1e-12) < n) return false;
  auto F = hull_facets(normals, 1e-12);
  if (F.empty()) return false;
  for (const auto& f : F)
    if (f.second <= 1e-12) return false;
  return true;
}

double simplex_measure(const std::vector<Vec>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  if (d <= 0) return 1.0;
  const int n = static_cast<int>(c[0].size());
  Mat E(n, d);
  for (int k = 1; k <= d; ++k) E.col(k - 1) = c[k] - c[0];
  double g = (E.transpose() * E).determinant();
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  return std::sqrt(std::max(g, 0.0)) / fact;
}

void face_simplices(const std::vector<Vec>& V, const std::vector<int>& verts, int d,
                    const std::vector<std::vector<int>>& tight, double tol,
                    std::vector<std::vector<Vec>>& out) {
  if (d == 0) {
    out.push_back({V[verts[0]]});
    return;
  }
  if (d == 1) {
    // Extreme pair along the edge.
    int a = verts[0], b = verts[0];
    double best = -1.0;
    for (int i : verts)
      for (int j : verts) {
        double dd = (V[i] - V[j]).squaredNorm();
        if (dd > best) {
          best = dd;
          a = i;
          b = j;
        }
      }
    out.push_back({V[a], V[b]});
    return;
  }
  Vec c = Vec::Zero(V[verts[0]].size());
  for (int i : verts) c += V[i];
  c /= static_cast<double>(verts.size());

  std::vector<std::vector<int>> subfaces;
  for (const auto& T : tight) {
    std::vector<int> S;
    std::set_intersection(verts.begin(), verts.end(), T.begin(), T.end(), std::back_inserter(S));
    if (S.size() < static_cast<std::size_t>(d) || S.size() == verts.size()) continue;
    if (affine_rank(V, S, tol) != d - 1) continue;
    if (std::find(subfaces.begin(), subfaces.end(), S) != subfaces.end()) continue;
    subfaces.push_back(S);
  }
  for (const auto& G : subfaces) {
    std::vector<std::vector<Vec>> sub;
    face_simplices(V, G, d - 1, tight, tol, sub);
    for (auto& s : sub) {
      std::vector<Vec> cs;
      cs.reserve(s.size() + 1);
      cs.push_back(c);
      for (auto& p : s) cs.push_back(std::move(p));
      out.push_back(std::move(cs));
    }
  }
}

}  // namespace chordgeom::detail
