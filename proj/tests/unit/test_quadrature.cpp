#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chordgeom/common.hpp"
#include "chordgeom/projection.hpp"
#include "chordgeom/quadrature.hpp"
#include "support.hpp"

using namespace chordgeom;
using chordgeom::test::v;

TEST(GaussLegendre, Polynomials) {
  const Rule1D r = gauss_legendre(5, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], 9);
  EXPECT_NEAR(s, std::pow(2.0, 10) / 10.0, 1e-10);
}

TEST(GaussJacobi, BetaMoments) {
  // int_0^1 (1-t)^a t^b t^2 dt = B(a+1, b+3)
  const double a = 0.5, b = -0.5;
  const Rule1D r = gauss_jacobi01(6, a, b);
  double s = 0.0, w = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    s += r.w[i] * r.x[i] * r.x[i];
    w += r.w[i];
  }
  EXPECT_NEAR(w, beta_fn(a + 1, b + 1), 1e-13);
  EXPECT_NEAR(s, beta_fn(a + 1, b + 3), 1e-13);
}

TEST(Sphere, TotalWeights) {
  for (int n : {2, 3, 4}) {
    const auto Q = SphereQuadrature::product_grid(n, 12, 24);
    EXPECT_NEAR(Q.total_weight(), n * omega(n), 1e-11) << n;
    for (const Vec& u : Q.nodes) EXPECT_NEAR(u.norm(), 1.0, 1e-14);
  }
  const auto M = SphereQuadrature::monte_carlo(5, 1000, 3);
  EXPECT_NEAR(M.total_weight(), 5 * omega(5), 1e-11);
  Vec c = Vec::Zero(5);
  for (const Vec& u : M.nodes) c += u;
  EXPECT_NEAR(c.norm(), 0.0, 1e-12);
}

TEST(Sphere, SecondMoment) {
  // int u_1^2 du = omega_n; Gauss-Legendre in the angle, so close but not exact
  const auto Q = SphereQuadrature::product_grid(3, 16, 16);
  double s = 0.0;
  for (int k = 0; k < Q.size(); ++k) s += Q.weights[k] * Q.nodes[k][0] * Q.nodes[k][0];
  EXPECT_NEAR(s, omega(3), 1e-10);
}

TEST(Hemisphere, GridAndJacobi) {
  const Vec p = v({1, 2, 2}) / 3.0;
  const auto H = hemisphere_grid(p, 10, 20);
  double w = 0.0;
  for (std::size_t k = 0; k < H.nodes.size(); ++k) {
    EXPECT_GE(H.nodes[k].dot(p), 0.0);
    w += H.weights[k];
  }
  EXPECT_NEAR(w, 2.0 * std::numbers::pi, 1e-12);
  // weights carry t^beta: int t^{-1/2} * t du over the hemisphere = 2 pi / 1.5
  const auto J = jacobi_hemisphere(p, -0.5, 8, 10, 20);
  double s = 0.0;
  for (std::size_t k = 0; k < J.nodes.size(); ++k) s += J.weights[k] * J.t[k];
  EXPECT_NEAR(s, 2.0 * std::numbers::pi / 1.5, 1e-11);
}

TEST(Complement, Orthonormal) {
  const Vec p = v({0.5, 0.5, 0.5, 0.5});
  const Mat B = orthonormal_complement(p);
  ASSERT_EQ(B.cols(), 3);
  EXPECT_NEAR((B.transpose() * B - Mat::Identity(3, 3)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((B.transpose() * p).norm(), 0.0, 1e-14);
}

TEST(Simplex, ConicalRule) {
  for (int d : {1, 2, 3}) {
    for (int layers : {0, 3}) {
      const SimplexRule R = conical_simplex_rule(d, 4, layers);
      double w = 0.0, m = 0.0;
      for (std::size_t i = 0; i < R.w.size(); ++i) {
        w += R.w[i];
        m += R.w[i] * R.bary[i][0] * R.bary[i][0];
      }
      EXPECT_NEAR(w, 1.0, 1e-13);
      // mean of lambda_0^2 over the simplex: 2 / ((d+1)(d+2))
      EXPECT_NEAR(m, 2.0 / ((d + 1.0) * (d + 2.0)), 1e-12) << d << " " << layers;
    }
  }
}

TEST(PowerIntegrals, ClosedForms) {
  // int_0^1 (1-x)^p, int over triangle of lambda^p
  EXPECT_NEAR(segment_power_integral(1.0, 0.0, 1.0, 2.5), 1.0 / 3.5, 1e-14);
  EXPECT_NEAR(segment_power_integral(2.0, 2.0, 3.0, 1.5), 3.0 * std::pow(2.0, 1.5), 1e-13);
  EXPECT_NEAR(segment_power_integral(1.0, 1.0 + 1e-9, 1.0, 0.5), 1.0, 1e-9);
  EXPECT_NEAR(triangle_power_integral(1.0, 0.0, 0.0, 0.5, 0.5), 1.0 / (1.5 * 2.5), 1e-13);
  // d-simplex: int lambda^p = d! vol Gamma(p+1) / Gamma(p+d+1)
  for (double p : {0.5, 1.0, 2.5}) {
    const double tri = std::tgamma(p + 1) / std::tgamma(p + 3);
    EXPECT_NEAR(simplex_power_integral({1, 0, 0}, 0.5, p), tri, 1e-12);
    EXPECT_NEAR(simplex_power_integral({1, 0, 0, 0}, 1.0 / 6.0, p), std::tgamma(p + 1) / std::tgamma(p + 4), 1e-12);
    EXPECT_NEAR(simplex_power_integral({0.3, 0.7, 1.1}, 0.5, p), triangle_power_integral(0.3, 0.7, 1.1, 0.5, p),
                1e-12);
    EXPECT_NEAR(simplex_power_integral({0.5, 0.5 + 1e-7, 0.5 - 1e-7, 0.5}, 1.0, p), std::pow(0.5, p), 1e-9);
  }
}
