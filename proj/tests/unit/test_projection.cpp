#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chordgeom/chord_integral.hpp"
#include "chordgeom/corpus.hpp"
#include "chordgeom/projection.hpp"
#include "support.hpp"

using namespace chordgeom;
using chordgeom::test::v;

namespace {

const double pi = std::numbers::pi;
const double kUnitCubeI2 = 0.8966336153887466;

double identity_error(const HPolytope& P, double q, const PolytopeChordData& d) {
  double s = 0.0;
  for (int i = 0; i < P.size(); ++i) s += P.h()[i] * d.F[i];
  const double T = (P.dim() + q - 1.0) * d.I;
  return std::abs(T - s) / T;
}

}  // namespace

TEST(Directional, SquareAlongAxis) {
  const HPolytope C = cube(2);
  // X = 2 over a segment of length 2
  EXPECT_NEAR(projection_directional(C, v({1, 0}), 1.5, nullptr), 2.0 * std::pow(2.0, 1.5), 1e-12);
  std::vector<double> g;
  projection_directional(C, v({0, 1}), 1.0, &g);
  ASSERT_EQ(g.size(), 4u);
}

TEST(Directional, GradientMatchesDifference) {
  for (int n : {2, 3, 4}) {
    const HPolytope P = random_polytope(n, 2 * n + 3, 21, 0);
    Vec u = Vec::LinSpaced(n, 0.3, 1.1);
    u.normalize();
    std::vector<double> g;
    const double f = projection_directional(P, u, 1.7, &g);
    for (int i = 0; i < P.size(); ++i) {
      if (P.redundant(i)) continue;
      auto h = P.offsets();
      h[i] += 1e-6;
      const double fp = projection_directional(HPolytope(P.normals(), h), u, 1.7, nullptr);
      h[i] -= 2e-6;
      const double fm = projection_directional(HPolytope(P.normals(), h), u, 1.7, nullptr);
      EXPECT_NEAR(g[i], (fp - fm) / 2e-6, 1e-5 * (1.0 + f)) << n << " " << i;
    }
  }
}

TEST(Integrator, CubeClosedForms) {
  const HPolytope U = cube(3, 0.5).translated(v({0.5, 0.5, 0.5}));
  const auto d1 = projection_chord(U, 1.0, {}, true);
  EXPECT_NEAR(d1.I, 1.0, 1e-12);
  for (double F : d1.F) EXPECT_NEAR(F, 1.0, 1e-9);
  EXPECT_NEAR(projection_chord(U, 4.0, {}, false).I, 3.0 / pi, 2e-4);
  EXPECT_NEAR(projection_chord(U, 2.0, {}, false).I, kUnitCubeI2, 2e-4 * kUnitCubeI2);
  const auto e = chord_projection(U, 2.0);
  EXPECT_GT(e.std_error, 0.0);
  EXPECT_LT(e.std_error, 1e-3);
}

TEST(Integrator, SquareAndHypercube) {
  const HPolytope S = cube(2);
  EXPECT_NEAR(projection_chord(S, 1.0, {}, false).I, 4.0, 1e-9);
  EXPECT_NEAR(projection_chord(S, 3.0, {}, false).I, 3.0 * 16.0 / pi, 1e-4);
  const HPolytope H = cube(4);
  const double V = 16.0;
  EXPECT_NEAR(projection_chord(H, 1.0, {}, false).I, V, 1e-3 * V);
  EXPECT_NEAR(projection_chord(H, 5.0, {}, false).I, 5.0 * V * V / omega(4), 2e-3 * 5.0 * V * V / omega(4));
}

TEST(Integrator, TotalMassIdentity) {
  for (int n : {2, 3, 4}) {
    const HPolytope P = random_polytope(n, n == 4 ? 9 : 8, 31, 1);
    for (double q : {0.5, 2.0}) {
      const auto d = projection_chord(P, q, {}, true);
      EXPECT_LT(identity_error(P, q, d), n == 4 ? 1e-4 : 1e-7) << n << " " << q;
    }
  }
}

TEST(Integrator, PinnedPoleUsed) {
  const HPolytope P = random_polytope(4, 9, 31, 1);
  ProjectionConfig c;
  c.n4_pole = principal_pole(P);
  EXPECT_EQ(projection_chord(P, 2.0, c, false).I, projection_chord(P, 2.0, {}, false).I);
  EXPECT_NEAR(principal_pole(P).norm(), 1.0, 1e-14);
}

TEST(Integrator, AgreesWithLineMC) {
  const HPolytope P = random_polytope(3, 10, 8, 3);
  const double I = projection_chord(P, 0.5, {}, false).I;
  const auto e = chord_line_mc(P, 0.5, 400000, 8);
  EXPECT_NEAR(I, e.value, 3.0 * e.std_error);
}

TEST(Integrator, Rejects) {
  EXPECT_CODE(projection_chord(cube(5), 1.0, {}, false), Precondition);
  EXPECT_CODE(projection_chord(cube(3), 0.0, {}, false), Precondition);
}
