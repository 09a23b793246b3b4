#include <gtest/gtest.h>

#include <cmath>

#include "chordgeom/corpus.hpp"
#include "chordgeom/minkowski.hpp"
#include "support.hpp"

using namespace chordgeom;
using chordgeom::test::v;

namespace {

DiscreteSphericalMeasure axis_measure(int n, const std::vector<double>& pair_mass) {
  DiscreteSphericalMeasure mu;
  mu.dim = n;
  for (int i = 0; i < n; ++i) {
    mu.atoms.push_back({Vec::Unit(n, i), pair_mass[i]});
    mu.atoms.push_back({-Vec::Unit(n, i), pair_mass[i]});
  }
  return mu;
}

double centred_hausdorff(const HPolytope& A, const HPolytope& B) {
  return hausdorff_distance(A.translated(-A.centroid()), B.translated(-B.centroid()));
}

}  // namespace

TEST(Entropy, CubeAndScaling) {
  const auto mu = axis_measure(3, {1, 1, 1});
  EXPECT_NEAR(entropy(cube(3), mu), 0.0, 1e-15);
  const HPolytope P = random_polytope(3, 10, 50, 0);
  const auto nu = chord_measure_polytope(P, 2.0);
  EXPECT_NEAR(entropy(P.scaled(2.0), nu), entropy(P, nu) - std::log(2.0), 1e-12);
  EXPECT_CODE(entropy(cube(3).translated(v({1, 0, 0})), mu), NonpositiveSupport);
}

TEST(Objectives, ScaleInvariant) {
  const HPolytope P = random_polytope(3, 10, 50, 1);
  const auto mu = chord_measure_polytope(random_polytope(3, 10, 50, 2), 2.0);
  const auto sym = cone_chord_measure(random_symmetric_polytope(3, 5, 50, 0), 2.0);
  const HPolytope S = random_symmetric_polytope(3, 5, 51, 0);
  EXPECT_NEAR(chord_objective(P.scaled(1.7), mu, 2.0), chord_objective(P, mu, 2.0), 1e-9);
  EXPECT_NEAR(log_objective(S.scaled(0.6), sym, 2.0), log_objective(S, sym, 2.0), 1e-9);
}

TEST(ChordData, Validation) {
  EXPECT_TRUE(validate_chord_data(chord_measure_polytope(cube(3), 2.0)).ok);
  DiscreteSphericalMeasure up{3, {{v({0, 0, 1}), 1.0}, {v({0.6, 0, 0.8}), 1.0}, {v({0, 0.6, 0.8}), 1.0}}};
  const auto r = validate_chord_data(up);
  EXPECT_FALSE(r.ok);
  EXPECT_LE(r.hemisphere_margin, 0.0);
  DiscreteSphericalMeasure two{2, {{v({1, 0}), 1.0}, {v({0, 1}), 1.0}}};
  const auto c = validate_chord_data(two);
  EXPECT_FALSE(c.ok);
  EXPECT_GT(c.centroid_relative, 1e-3);
}

TEST(LogData, CrossPolytopeAndCube) {
  const auto x = axis_measure(3, {1, 1, 1});
  const auto r1 = validate_log_data(x, 1.0);
  EXPECT_FALSE(r1.ok);
  EXPECT_NEAR(r1.worst_margin, 0.0, 1e-12);
  EXPECT_TRUE(r1.equality_split);
  const auto r2 = validate_log_data(x, 2.0);
  EXPECT_TRUE(r2.ok);
  // k = 1: 1/3 against 2/4; k = 2: 2/3 against 3/4
  EXPECT_NEAR(r2.worst_margin, 0.75 - 2.0 / 3.0, 1e-12);
  EXPECT_EQ(r2.worst_k, 2);
  const auto g = validate_log_data(cone_chord_measure(cube(3), 2.0), 2.0);
  EXPECT_TRUE(g.ok);
  EXPECT_NEAR(g.worst_margin, 0.75 - 2.0 / 3.0, 1e-5);
  auto odd = x;
  odd.atoms[1].mass = 2.0;
  EXPECT_CODE(validate_log_data(odd, 2.0), NotEven);
}

TEST(Partners, Antipodal) {
  DiscreteSphericalMeasure mu{2, {{v({1, 0}), 1.0}, {v({0, 1}), 1.0}, {v({-1, 0}), 1.0}}};
  EXPECT_EQ(antipodal_partners(mu), (std::vector<int>{2, -1, 0}));
}

TEST(ChordSolver, ClassicalRoundTrip) {
  const HPolytope P = random_polytope(3, 9, 52, 0);
  SolverConfig cfg;
  cfg.q = 1.0;
  const auto res = solve_chord_minkowski(chord_measure_polytope(P, 1.0), cfg);
  ASSERT_TRUE(res.ok()) << status_name(res.status);
  ASSERT_TRUE(res.body.has_value());
  EXPECT_LE(res.residual, 1e-3);
  EXPECT_LE(centred_hausdorff(*res.body, P), 1e-3 * P.diameter());
  EXPECT_TRUE(res.unmatched_atoms.empty());
  for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
    EXPECT_GE(res.objective_trace[i], res.objective_trace[i - 1] - 1e-12);
}

TEST(ChordSolver, CubeQTwo) {
  SolverConfig cfg;
  cfg.q = 2.0;
  const auto res = solve_chord_minkowski(chord_measure_polytope(cube(3), 2.0), cfg);
  ASSERT_TRUE(res.ok());
  EXPECT_LE(res.residual, 2e-3);
  // equal masses of any total give a cube
  const auto eq = solve_chord_minkowski(axis_measure(3, {5, 5, 5}), cfg);
  ASSERT_TRUE(eq.ok());
  EXPECT_LE(eq.residual, 1e-3);
  const auto w = eq.body->realized_offsets();
  for (int i = 0; i < 6; i += 2) EXPECT_NEAR(w[i] + w[i + 1], w[0] + w[1], 1e-4 * (w[0] + w[1]));
}

TEST(ChordSolver, RejectsBadData) {
  DiscreteSphericalMeasure two{2, {{v({1, 0}), 1.0}, {v({0, 1}), 1.0}}};
  SolverConfig cfg;
  EXPECT_CODE(solve_chord_minkowski(two, cfg), Precondition);
}

TEST(ChordSolver, IterationBudget) {
  SolverConfig cfg;
  cfg.q = 2.0;
  cfg.max_iters = 1;
  const auto res = solve_chord_minkowski(chord_measure_polytope(random_polytope(3, 9, 52, 1), 2.0), cfg);
  EXPECT_EQ(res.status, SolverStatus::NonConvergence);
  EXPECT_LE(res.iterations, 1);
}

TEST(LogSolver, CubeConeVolume) {
  SolverConfig cfg;
  cfg.q = 1.0;
  const auto res = solve_chord_log_minkowski(axis_measure(3, {4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0}), cfg);
  ASSERT_TRUE(res.ok()) << status_name(res.status);
  for (double h : res.body->realized_offsets()) EXPECT_NEAR(h, 1.0, 1e-4);
  EXPECT_NEAR(res.body->volume(), 8.0, 1e-3);
}

TEST(LogSolver, SymmetricRoundTrip) {
  const HPolytope S = random_symmetric_polytope(3, 5, 53, 0);
  SolverConfig cfg;
  cfg.q = 2.0;
  const auto res = solve_chord_log_minkowski(cone_chord_measure(S, 2.0), cfg);
  ASSERT_TRUE(res.ok()) << status_name(res.status);
  EXPECT_LE(res.residual, 1e-2);
}

TEST(LogSolver, ViolatedMassInequality) {
  // pair +-e1 carries half the mass: ratio 1/2 above the q = 1 bound 1/3
  const auto mu = axis_measure(3, {0.5, 0.25, 0.25});
  const auto r = validate_log_data(mu, 1.0);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.equality_split);
  EXPECT_LT(r.worst_margin, 0.0);
  SolverConfig cfg;
  cfg.q = 1.0;
  EXPECT_CODE(solve_chord_log_minkowski(mu, cfg), Precondition);
  cfg.check_data = false;
  const auto res = solve_chord_log_minkowski(mu, cfg);
  EXPECT_TRUE(res.status == SolverStatus::CollapseDetected || res.residual > 1e-2) << status_name(res.status);
}

TEST(LogData, EqualityWithoutSplit) {
  // +-e1, +-e2 and +-(e1+e2)/sqrt2 in R^3 plus +-e3: span{e1,e2} holds 3/4 of the
  // mass against a q = 1 bound of 2/3.
  DiscreteSphericalMeasure mu{3, {}};
  for (const Vec& u : {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), Vec(v({1, 1, 0}) / std::sqrt(2.0))}) {
    mu.atoms.push_back({u, 1.0});
    mu.atoms.push_back({-u, 1.0});
  }
  const auto r = validate_log_data(mu, 1.0);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.equality_split);
  EXPECT_NEAR(r.worst_margin, 2.0 / 3.0 - 0.75, 1e-12);
  EXPECT_EQ(r.worst_k, 2);
}

TEST(LogSolver, Preconditions) {
  SolverConfig cfg;
  cfg.q = 5.0;
  EXPECT_CODE(solve_chord_log_minkowski(axis_measure(3, {1, 1, 1}), cfg), Precondition);
}
