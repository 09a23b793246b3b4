#include "chordgeom/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "chordgeom/rng.hpp"

namespace chordgeom {

namespace {

HPolytope drop_redundant(const HPolytope& P) {
  std::vector<Vec> u;
  std::vector<double> h;
  const auto hr = P.realized_offsets();
  for (int i = 0; i < P.size(); ++i)
    if (!P.redundant(i)) {
      u.push_back(P.normals()[i]);
      h.push_back(hr[i]);
    }
  return HPolytope(u, h);
}

}  // namespace

HPolytope random_polytope(int n, int m, std::uint64_t seed, std::uint64_t index) {
  if (m < n + 1) throw Error(ErrorCode::Precondition, "need at least n+1 facets");
  auto g = substream(seed, stream::corpus, 2 * index);
  for (int attempt = 0;; ++attempt) {
    std::vector<Vec> u;
    std::vector<double> h;
    for (int i = 0; i < m; ++i) {
      u.push_back(random_direction(n, g));
      h.push_back(0.6 + 0.8 * uniform01(g));
    }
    try {
      HPolytope P = drop_redundant(HPolytope(u, h));
      if (P.size() >= n + 1) return P;
    } catch (const Error&) {
      if (attempt > 1000) throw;
    }
  }
}

HPolytope random_symmetric_polytope(int n, int pairs, std::uint64_t seed, std::uint64_t index) {
  if (pairs < n) throw Error(ErrorCode::Precondition, "need at least n antipodal pairs");
  auto g = substream(seed, stream::corpus, 2 * index + 1);
  for (int attempt = 0;; ++attempt) {
    std::vector<Vec> u;
    std::vector<double> h;
    for (int i = 0; i < pairs; ++i) {
      Vec v = random_direction(n, g);
      const double t = 0.6 + 0.8 * uniform01(g);
      u.push_back(v);
      h.push_back(t);
      u.push_back(-v);
      h.push_back(t);
    }
    try {
      HPolytope P = drop_redundant(HPolytope(u, h));
      if (P.size() >= 2 * n) return P;
    } catch (const Error&) {
      if (attempt > 1000) throw;
    }
  }
}

HPolytope random_aligned_symmetric_polytope(int n, std::uint64_t seed, std::uint64_t index) {
  auto g = substream(seed, stream::corpus, 0x20000 + index);
  for (int attempt = 0;; ++attempt) {
    std::vector<Vec> u;
    std::vector<double> h;
    auto add_pair = [&](const Vec& v, double t) {
      u.push_back(v);
      h.push_back(t);
      u.push_back(-v);
      h.push_back(t);
    };
    for (int i = 0; i < n; ++i) add_pair(Vec::Unit(n, i), 0.6 + 0.8 * uniform01(g));
    const int a = static_cast<int>(uniform01(g) * n) % n;
    const int b = (a + 1 + static_cast<int>(uniform01(g) * (n - 1)) % (n - 1)) % n;
    const double phi = 2.0 * M_PI * uniform01(g);
    Vec w = Vec::Zero(n);
    w[a] = std::cos(phi);
    w[b] = std::sin(phi);
    add_pair(w, 0.6 + 0.8 * uniform01(g));
    const int extra = 1 + static_cast<int>(index % 3);
    for (int i = 0; i < extra; ++i) add_pair(random_direction(n, g), 0.8 + 0.8 * uniform01(g));
    try {
      HPolytope P = drop_redundant(HPolytope(u, h));
      if (P.size() >= 2 * n) return P;
    } catch (const Error&) {
      if (attempt > 1000) throw;
    }
  }
}

HPolytope box(const Vec& w) {
  const int n = static_cast<int>(w.size());
  std::vector<Vec> u;
  std::vector<double> h;
  for (int i = 0; i < n; ++i) {
    u.push_back(Vec::Unit(n, i));
    h.push_back(w[i]);
    u.push_back(-Vec::Unit(n, i));
    h.push_back(w[i]);
  }
  return HPolytope(u, h);
}

HPolytope cube(int n, double half_width) { return box(Vec::Constant(n, half_width)); }

Ellipsoid random_ellipsoid(int n, double lo, std::uint64_t seed, std::uint64_t index) {
  auto g = substream(seed, stream::corpus, 0x10000 + index);
  Vec a(n);
  for (int i = 0; i < n; ++i) a[i] = lo + (1.0 - lo) * uniform01(g);
  std::sort(a.data(), a.data() + n);
  return Ellipsoid(Vec::Zero(n), a);
}

}  // namespace chordgeom
