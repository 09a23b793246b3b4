#pragma once

#include <utility>
#include <vector>

#include "chordgeom/common.hpp"

namespace chordgeom::detail {

// Calls fn(indices) for every k-subset of {0..m-1} in lexicographic order.
template <class F>
void for_each_subset(int m, int k, F&& fn) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int affine_rank(const std::vector<Vec>& pts, const std::vector<int>& idx, double tol);

struct Chebyshev {
  Vec center;
  double radius = -1.0;
};
// Largest ball inside {x : A x <= h}, rows of A unit.
Chebyshev chebyshev_ball(const Mat& A, const Vec& h);

std::vector<Vec> enumerate_vertices(const Mat& A, const Vec& h, double tol);

// Supporting hyperplanes (a unit, b) of conv(points) with a.p <= b.
std::vector<std::pair<Vec, double>> hull_facets(const std::vector<Vec>& points, double tol);

bool positively_spanning(const std::vector<Vec>& normals);

// Cone decomposition of the face spanned by `verts` (affine dimension d), apex first.
void face_simplices(const std::vector<Vec>& V, const std::vector<int>& verts, int d,
                    const std::vector<std::vector<int>>& tight, double tol,
                    std::vector<std::vector<Vec>>& out);

double simplex_measure(const std::vector<Vec>& corners);

}  // namespace chordgeom::detail
