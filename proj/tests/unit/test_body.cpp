#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chordgeom/body.hpp"
#include "chordgeom/corpus.hpp"
#include "support.hpp"

using namespace chordgeom;
using chordgeom::test::v;

namespace {

const double pi = std::numbers::pi;

std::vector<Vec> cube_normals(int n) {
  std::vector<Vec> u;
  for (int i = 0; i < n; ++i) {
    u.push_back(Vec::Unit(n, i));
    u.push_back(-Vec::Unit(n, i));
  }
  return u;
}

}  // namespace

TEST(Support, BallCubeEllipsoid) {
  EXPECT_DOUBLE_EQ(support(Ball(v({0, 0, 0}), 1.0), v({0.6, 0.8, 0})), 1.0);
  const HPolytope C = cube(3);
  EXPECT_NEAR(support(C, v({1, 0, 0})), 1.0, 1e-14);
  EXPECT_NEAR(support(C, v({1, 1, 1}) / std::sqrt(3.0)), std::sqrt(3.0), 1e-14);
  const Ellipsoid E(v({0, 0, 0}), v({1, 2, 3}));
  const Vec u = v({1, 2, 2}) / 3.0;
  EXPECT_NEAR(support(E, u), std::sqrt((1.0 + 16.0 + 36.0) / 9.0), 1e-14);
}

TEST(Radial, ExtendedAndXray) {
  const Ball B(v({0, 0}), 1.0);
  EXPECT_NEAR(radial_extended(B, v({0, 0}), v({0, 1})), 1.0, 1e-15);
  // boundary point, direction at angle theta to the inward normal
  const double th = 0.4;
  EXPECT_NEAR(radial_extended(B, v({1, 0}), v({-std::cos(th), std::sin(th)})), 2.0 * std::cos(th), 1e-14);
  const HPolytope Q = box(v({0.5, 0.5})).translated(v({0.5, 0.5}));
  EXPECT_NEAR(radial_extended(Q, v({2, 0.5}), v({-1, 0})), 2.0, 1e-14);
  EXPECT_NEAR(xray(B, v({0, 0}), v({1, 0})), 2.0, 1e-15);
  EXPECT_NEAR(xray(B, v({0, 0.6}), v({1, 0})), 1.6, 1e-14);
  const HPolytope U = cube(3, 0.5).translated(v({0.5, 0.5, 0.5}));
  EXPECT_NEAR(xray(U, v({0.3, 0.7, 0}), v({0, 0, 1})), 1.0, 1e-14);
  EXPECT_EQ(xray(U, v({3, 3, 0}), v({0, 0, 1})), 0.0);
}

TEST(Wulff, CubeFromAxisNormals) {
  for (int n : {2, 3, 4}) {
    const HPolytope P = wulff(cube_normals(n), std::vector<double>(2 * n, 1.0));
    EXPECT_EQ(P.vertices().size(), std::size_t(1) << n);
    EXPECT_NEAR(P.volume(), std::pow(2.0, n), 1e-12);
    EXPECT_NEAR(P.surface_area(), 2.0 * n * std::pow(2.0, n - 1), 1e-12);
    EXPECT_NEAR(P.centroid().norm(), 0.0, 1e-14);
    EXPECT_NEAR(P.inradius(), 1.0, 1e-12);
  }
}

TEST(Wulff, RedundantFacetFlagged) {
  auto u = cube_normals(3);
  std::vector<double> h(6, 1.0);
  u.push_back(Vec::Unit(3, 0));
  h.push_back(1.5);
  const HPolytope P = wulff(u, h);
  EXPECT_EQ(P.size(), 7);
  EXPECT_EQ(P.active_count(), 6);
  EXPECT_TRUE(P.redundant(6));
  EXPECT_EQ(P.facets()[6].area, 0.0);
  EXPECT_NEAR(P.volume(), 8.0, 1e-12);
  EXPECT_NEAR(P.realized_offsets()[6], 1.0, 1e-12);
}

TEST(Wulff, Errors) {
  EXPECT_CODE(wulff(cube_normals(3), {1, 1, -3, 1, 1, 1}), EmptyInterior);
  EXPECT_CODE(wulff({v({1, 0}), v({0, 1}), v({-1, 0})}, {1, 1, 1}), Unbounded);
  EXPECT_CODE(VPolytope({v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0})}), DegenerateHull);
  EXPECT_CODE(Ball(v({0, 0}), 0.0), Precondition);
}

TEST(Facets, CubeAndRegularSimplex) {
  const auto& F = facet_decomposition(cube(3));
  ASSERT_EQ(F.size(), 6u);
  for (const auto& f : F) {
    EXPECT_NEAR(f.area, 4.0, 1e-12);
    EXPECT_EQ(f.vertices.size(), 4u);
  }
  std::vector<Vec> u = {v({1, 1, 1}), v({1, -1, -1}), v({-1, 1, -1}), v({-1, -1, 1})};
  for (auto& x : u) x.normalize();
  const HPolytope S = wulff(u, {1, 1, 1, 1});
  ASSERT_EQ(S.vertices().size(), 4u);
  // edge 2*sqrt(6) at inradius 1; facet area sqrt(3)/4 * 24
  for (const auto& f : S.facets()) EXPECT_NEAR(f.area, 6.0 * std::sqrt(3.0), 1e-11);
  EXPECT_NEAR(S.volume(), 8.0 * std::sqrt(3.0), 1e-11);
}

TEST(Volume, Bodies) {
  EXPECT_NEAR(volume(Ball(v({0, 0, 0}), 1.0)), 4.0 * pi / 3.0, 1e-14);
  EXPECT_NEAR(surface_area(Ball(v({0, 0, 0}), 1.0)), 4.0 * pi, 1e-13);
  for (int n : {2, 3, 4}) {
    const HPolytope U = cube(n, 0.5).translated(Vec::Constant(n, 0.5));
    EXPECT_NEAR(U.volume(), 1.0, 1e-12);
    EXPECT_NEAR(U.surface_area(), 2.0 * n, 1e-12);
  }
  EXPECT_NEAR(volume(Ellipsoid(v({0, 0, 0}), v({1, 2, 3}))), 8.0 * pi, 1e-12);
  const VPolytope T({v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({0.1, 0.1, 0.1})});
  EXPECT_EQ(T.vertices().size(), 4u);
  EXPECT_NEAR(T.hrep().volume(), 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(T.hrep().surface_area(), 1.5 + std::sqrt(3.0) / 2.0, 1e-13);
}

TEST(Hausdorff, Cases) {
  const Ball B1(v({0, 0, 0}), 1.0), B2(v({0, 0, 0}), 2.0);
  EXPECT_EQ(hausdorff_distance(B1, B1), 0.0);
  EXPECT_NEAR(hausdorff_distance(B1, B2), 1.0, 1e-14);
  const double d = hausdorff_distance(cube(3), B1);
  EXPECT_LE(d, std::sqrt(3.0) - 1.0 + 1e-12);
  EXPECT_GE(d, std::sqrt(3.0) - 1.0 - 5e-3);
}

TEST(Ellipsoid, MeanCurvature) {
  const Ellipsoid E(v({0, 0, 0}), v({1, 1, 2}));
  EXPECT_NEAR(ellipsoid_mean_curvature(E, v({0, 0, 2})), 2.0, 1e-13);
  EXPECT_NEAR(ellipsoid_mean_curvature(E, v({1, 0, 0})), 0.625, 1e-13);
  const Ellipsoid B(v({0, 0, 0}), v({3, 3, 3}));
  EXPECT_NEAR(ellipsoid_mean_curvature(B, v({0, 3, 0})), 1.0 / 3.0, 1e-14);
}

TEST(Ellipsoid, AxesSortedWithFrame) {
  const Ellipsoid E(v({1, 0}), v({2, 1}));
  EXPECT_DOUBLE_EQ(E.semi_axes()[0], 1.0);
  EXPECT_DOUBLE_EQ(E.semi_axes()[1], 2.0);
  EXPECT_NEAR(support(E, v({1, 0})), 3.0, 1e-14);
  EXPECT_NEAR(support(E, v({0, 1})), 1.0, 1e-14);
}

TEST(Body, TranslateScale) {
  const HPolytope P = random_polytope(3, 10, 5, 0);
  const Body T = translate(P, v({0.25, -0.5, 0.125}));
  EXPECT_NEAR(volume(T), P.volume(), 1e-12);
  const Body S = scale(P, 2.0);
  EXPECT_NEAR(volume(S), 8.0 * P.volume(), 1e-11);
  EXPECT_NEAR(surface_area(S), 4.0 * P.surface_area(), 1e-11);
  EXPECT_NEAR(diameter(S), 2.0 * P.diameter(), 1e-12);
}

TEST(Corpus, RandomPolytopesAreValid) {
  for (int i = 0; i < 10; ++i) {
    const HPolytope P = random_polytope(3, 10, 1, i);
    EXPECT_EQ(P.active_count(), P.size());
    EXPECT_LE(P.size(), 10);
    EXPECT_LT(P.violation(Vec::Zero(3)), 0.0);
    const HPolytope S = random_symmetric_polytope(3, 6, 1, i);
    EXPECT_NO_THROW(S.volume());
  }
  // same seed and index, same body
  EXPECT_EQ(random_polytope(3, 10, 9, 4).offsets(), random_polytope(3, 10, 9, 4).offsets());
}
