// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance 3 7 13     run the listed ones
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chordgeom/chord_integral.hpp"
#include "chordgeom/chord_measure.hpp"
#include "chordgeom/concentration.hpp"
#include "chordgeom/corpus.hpp"
#include "chordgeom/dual_quermass.hpp"
#include "chordgeom/minkowski.hpp"

using namespace chordgeom;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
  bool pass = true;
  std::string detail;
  // Records a sub-check; the first failures are kept for the summary line.
  void need(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || detail.size() < 300) detail += (detail.empty() ? "" : "; ") + what;
    pass = false;
  }
};

std::string fmt(const char* f, auto... xs) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

HPolytope unit_cube() { return cube(3, 0.5).translated(Vec::Constant(3, 0.5)); }

// Special-case identities by line MC at 10^6 lines.
Verdict c01() {
  Verdict v;
  const long N = 1000000;
  const std::vector<std::pair<std::string, Body>> bodies = {{"B3", Ball(Vec::Zero(3), 1.0)}, {"cube", unit_cube()}};
  double worst = 0.0;
  for (const auto& [name, K] : bodies) {
    const double V = volume(K), S = surface_area(K);
    const auto e1 = chord_line_mc(K, 1.0, N, kSeed);
    const auto e0 = chord_line_mc(K, 0.0, N, kSeed + 1);
    const auto e4 = chord_line_mc(K, 4.0, N, kSeed + 2);
    const double t0 = omega(2) / (3.0 * omega(3)) * S, t4 = 4.0 * V * V / omega(3);
    v.need(std::abs(e1.value - V) <= 3.0 * e1.std_error, name + fmt(" I1 off by %.2f sigma", std::abs(e1.value - V) / e1.std_error));
    v.need(rel(e1.value, V) <= 0.005, name + fmt(" I1 rel %.4f", rel(e1.value, V)));
    v.need(rel(e0.value, t0) <= 0.005, name + fmt(" I0 rel %.4f", rel(e0.value, t0)));
    v.need(rel(e4.value, t4) <= 0.005, name + fmt(" I4 rel %.4f", rel(e4.value, t4)));
    worst = std::max({worst, rel(e1.value, V), rel(e0.value, t0), rel(e4.value, t4)});
  }
  if (v.pass) v.detail = fmt("worst relative error %.2e at N = 1e6", worst);
  return v;
}

// Ball closed form against line MC, volume form and (q > 1) the Riesz double integral.
Verdict c02() {
  Verdict v;
  const Ball B(Vec::Zero(3), 1.0);
  const auto Q = SphereQuadrature::product_grid(3, 16, 32);
  double worst = 0.0;
  int n_checks = 0;
  for (double q : {0.5, 1.0, 2.0, 2.5, 4.0}) {
    const double exact = ball_chord_integral(3, q);
    std::vector<ChordEstimate> est = {chord_line_mc(B, q, 1000000, kSeed), chord_volume_form(B, q, 200000, Q, kSeed)};
    if (q > 1.0) est.push_back(chord_riesz_double(B, q, 1000000, kSeed));
    for (const auto& e : est) {
      const double d = std::abs(e.value - exact);
      v.need(d <= 3.0 * e.std_error + 1e-12 * exact,
             fmt("%s q=%g off by %.2f sigma", method_name(e.method), q, d / e.std_error));
      v.need(d <= 0.01 * exact, fmt("%s q=%g rel %.4f", method_name(e.method), q, d / exact));
      worst = std::max(worst, d / exact);
      ++n_checks;
    }
  }
  if (v.pass) v.detail = fmt("%d estimator/q pairs, worst relative error %.2e", n_checks, worst);
  return v;
}

// Homogeneity on 10 random polytopes.
Verdict c03() {
  Verdict v;
  double worst = 0.0;
  for (int b = 0; b < 10; ++b) {
    const HPolytope K = random_polytope(3, 8 + b % 5, kSeed, 300 + b);
    for (double q : {0.5, 1.0, 2.0, 3.0}) {
      const double I = chord_projection(K, q).value;
      for (double t : {0.5, 2.0}) {
        const double ratio = chord_projection(K.scaled(t), q).value / I;
        const double err = std::abs(ratio - std::pow(t, 3.0 + q - 1.0)) / std::pow(t, 3.0 + q - 1.0);
        v.need(err <= 0.01, fmt("body %d q=%g t=%g rel %.4f", b, q, t, err));
        worst = std::max(worst, err);
      }
    }
  }
  if (v.pass) v.detail = fmt("80 ratios, worst relative error %.2e", worst);
  return v;
}

// Corpus shared by the total-mass and centroid criteria: I from the projection integrator,
// F from direct facet quadrature (closed forms at q = 1 and n + 1).
struct MassRow {
  int body;
  double q;
  double identity;
  double centroid;
};

const std::vector<MassRow>& mass_corpus() {
  static const std::vector<MassRow> rows = [] {
    std::vector<MassRow> out;
    MeasureConfig facet;
    facet.method = MeasureMethod::Facet;
    facet.closed_forms = false;
    facet.tol = 5e-3;
    for (int b = 0; b < 20; ++b) {
      const HPolytope P = random_polytope(3, 5 + b % 6, kSeed, 400 + b);
      for (double q : {0.5, 1.0, 2.0, 4.0}) {
        const double I = (q == 1.0 || q == 4.0) ? chord_closed(P, q)->value : chord_projection(P, q).value;
        const auto F = (q == 1.0 || q == 4.0) ? chord_data(P, q).F : facet_quadrature_measure(P, q, facet);
        double pair = 0.0, tot = 0.0;
        Vec c = Vec::Zero(3);
        for (int i = 0; i < P.size(); ++i) {
          pair += P.h()[i] * F[i];
          tot += F[i];
          c += F[i] * P.normals()[i];
        }
        const double T = (3.0 + q - 1.0) * I;
        out.push_back({b, q, std::abs(T - pair) / T, c.norm() / tot});
      }
    }
    return out;
  }();
  return rows;
}

Verdict c04() {
  Verdict v;
  double worst = 0.0;
  for (const auto& r : mass_corpus()) {
    v.need(r.identity <= 0.01, fmt("body %d q=%g rel %.4f", r.body, r.q, r.identity));
    worst = std::max(worst, r.identity);
  }
  if (v.pass) v.detail = fmt("20 polytopes x q in {0.5,1,2,4}, worst relative error %.2e", worst);
  return v;
}

Verdict c05() {
  Verdict v;
  double worst = 0.0;
  for (const auto& r : mass_corpus()) {
    v.need(r.centroid <= 1e-3, fmt("body %d q=%g centroid %.2e", r.body, r.q, r.centroid));
    worst = std::max(worst, r.centroid);
  }
  if (v.pass) v.detail = fmt("worst |sum m_i u_i| / sum m_i = %.2e", worst);
  return v;
}

// Variational formula along K + tL.
Verdict c06() {
  Verdict v;
  const auto ts = halving_sequence(1e-2, 1e-4);
  double min_rate = 1e9, worst_term = 0.0;
  for (int n : {2, 3, 4}) {
    const std::vector<double> qs = n == 4 ? std::vector<double>{2.0} : std::vector<double>{0.5, 1.0, 2.0, n + 1.0};
    for (int b = 0; b < (n == 4 ? 1 : 2); ++b) {
      const HPolytope K = random_polytope(n, 2 * n + 2, kSeed, 600 + 10 * n + b);
      auto g = substream(kSeed, stream::corpus, 0x600 + 10 * n + b);
      std::vector<double> hl;
      for (int i = 0; i < K.size(); ++i) hl.push_back(K.h()[i] * (0.7 + 0.6 * uniform01(g)));
      const HPolytope L(K.normals(), hl);
      for (double q : qs) {
        const auto T = variational_check(K, L, q, ts);
        v.need(T.rate >= 0.8, fmt("n=%d body %d q=%g rate %.3f", n, b, q, T.rate));
        v.need(T.terminal_relative <= 1e-3, fmt("n=%d body %d q=%g terminal %.2e", n, b, q, T.terminal_relative));
        min_rate = std::min(min_rate, T.rate);
        worst_term = std::max(worst_term, T.terminal_relative);
      }
    }
  }
  if (v.pass) v.detail = fmt("min rate %.3f, worst terminal mismatch %.2e (n+q-1)I", min_rate, worst_term);
  return v;
}

// Mean-curvature limit.
Verdict c07() {
  Verdict v;
  const std::vector<double> qs = {0.2, 0.1, 0.05, 0.025};
  std::ostringstream d;
  for (int n : {2, 3}) {
    const double target = (n - 1) * omega(n - 1) / (2.0 * n);
    const auto f = mean_curvature_limit(Ball(Vec::Zero(n), 1.0), Vec::Unit(n, 0), qs);
    v.need(rel(f.estimate, target) <= 0.02, fmt("ball n=%d rel %.4f", n, rel(f.estimate, target)));
    d << fmt("B%d %.4f/%.4f ", n, f.estimate, target);
  }
  Vec a(3);
  a << 1, 1, 2;
  const Ellipsoid E(Vec::Zero(3), a);
  const double c = 2.0 * omega(2) / 6.0;
  for (const Vec& z : {Vec(2.0 * Vec::Unit(3, 2)), Vec(Vec::Unit(3, 0))}) {
    const double target = c * ellipsoid_mean_curvature(E, z);
    const auto f = mean_curvature_limit(E, z, qs);
    v.need(rel(f.estimate, target) <= 0.05, fmt("ellipsoid rel %.4f", rel(f.estimate, target)));
    d << fmt("E %.4f/%.4f ", f.estimate, target);
  }
  if (v.pass) v.detail = d.str();
  return v;
}

// q -> 0 limit of the chord measure of the ball.
Verdict c08() {
  Verdict v;
  const auto rows = q_zero_limit_check(Ball(Vec::Zero(3), 1.0), {0.02});
  const double err = std::abs(rows[0].total_mass - 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi);
  v.need(err <= 0.03, fmt("relative error %.4f", err));
  if (v.pass) v.detail = fmt("F_0.02(B3, S2) = %.4f, relative error %.4f", rows[0].total_mass, err);
  return v;
}

// Chord Minkowski round trip.
Verdict c09() {
  Verdict v;
  double worst_res = 0.0, worst_hd = 0.0;
  for (int b = 0; b < 10; ++b) {
    const HPolytope P = random_polytope(3, 11 + b, kSeed, 900 + b);
    for (double q : {1.0, 2.0}) {
      SolverConfig cfg;
      cfg.q = q;
      const auto res = solve_chord_minkowski(chord_measure_polytope(P, q), cfg);
      v.need(res.body.has_value() && res.residual <= 1e-2,
             fmt("body %d q=%g %s residual %.2e", b, q, status_name(res.status), res.residual));
      worst_res = std::max(worst_res, res.residual);
      if (q == 1.0 && res.body) {
        const HPolytope& S = *res.body;
        const double hd = hausdorff_distance(S.translated(P.centroid() - S.centroid()), P) / P.diameter();
        v.need(hd <= 1e-3, fmt("body %d Hausdorff/diam %.2e", b, hd));
        worst_hd = std::max(worst_hd, hd);
      }
    }
  }
  if (v.pass) v.detail = fmt("worst residual %.2e, worst Hausdorff/diam %.2e", worst_res, worst_hd);
  return v;
}

// Log-Minkowski round trip and a violated mass inequality.
Verdict c10() {
  Verdict v;
  double worst = 0.0;
  for (int b = 0; b < 10; ++b) {
    const HPolytope S = random_symmetric_polytope(3, 4 + b % 4, kSeed, 1000 + b);
    for (double q : {1.0, 2.0, 3.0}) {
      SolverConfig cfg;
      cfg.q = q;
      const auto res = solve_chord_log_minkowski(cone_chord_measure(S, q), cfg);
      v.need(res.body.has_value() && res.residual <= 1e-2,
             fmt("body %d q=%g %s residual %.2e", b, q, status_name(res.status), res.residual));
      worst = std::max(worst, res.residual);
    }
  }
  // +-e1 carries 0.55 of the mass against the k = 1 bound of 1/3 (q = 1) and 1/2 (q = 2).
  DiscreteSphericalMeasure bad;
  bad.dim = 3;
  const double m[3] = {0.55, 0.225, 0.225};
  for (int i = 0; i < 3; ++i) {
    bad.atoms.push_back({Vec::Unit(3, i), m[i]});
    bad.atoms.push_back({-Vec::Unit(3, i), m[i]});
  }
  std::string neg;
  for (double q : {1.0, 2.0}) {
    SolverConfig cfg;
    cfg.q = q;
    cfg.check_data = false;
    const auto res = solve_chord_log_minkowski(bad, cfg);
    const bool caught = res.status == SolverStatus::CollapseDetected || res.residual > 1e-2;
    v.need(caught, fmt("violated data at q=%g accepted (%s, residual %.2e)", q, status_name(res.status), res.residual));
    neg += fmt(" q=%g:%s", q, status_name(res.status));
  }
  if (v.pass) v.detail = fmt("30 round trips, worst residual %.2e; negative test", worst) + neg;
  return v;
}

// Subspace concentration and the sharpness sequence.
Verdict c11() {
  Verdict v;
  const auto sw = concentration_sweep(3, 100, kSeed, 1e-3);
  v.need(sw.violations == 0, fmt("%d violations, worst slack %.2e", sw.violations, sw.worst_slack));
  const auto sh = sharpness_sequence(1, 3, 3, {1, 2, 4, 8, 16});
  v.need(sh.back().ratio >= 0.95 * 0.4, fmt("sharpness ratio %.4f at j=16", sh.back().ratio));
  if (v.pass)
    v.detail = fmt("%zu ratio checks, worst slack %.3e; sharpness j=16 ratio %.4f (limit 0.4)", sw.rows.size(),
                   sw.worst_slack, sh.back().ratio);
  return v;
}

// Ellipsoid bound.
Verdict c12() {
  Verdict v;
  const auto s = ellipsoid_bound_sweep(3, 50, {1.5, 2.5, 3.5}, 100000, kSeed);
  v.need(s.violations == 0 && s.checks == 150, fmt("%d violations in %d checks", s.violations, s.checks));
  if (v.pass) v.detail = fmt("%d checks, min relative slack %.3f", s.checks, s.min_ratio_slack);
  return v;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CHORDGEOM_CLI_PATH + "\" " + args;
  std::unique_ptr<FILE, int (*)(FILE*)> p(popen(cmd.c_str(), "r"), pclose);
  if (!p) return {};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p.get())) > 0) out.append(buf.data(), got);
  return out;
}

std::string strip_wall_time(const std::string& s) {
  std::istringstream in(s);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"wall_time_ms\"") == std::string::npos) out += line + "\n";
  return out;
}

// Determinism of repeated check runs.
Verdict c13() {
  Verdict v;
  const std::string args = "--seed 7 check identities --n 3";
  const std::string a = run_cli(args), b = run_cli(args);
  v.need(!a.empty(), "no output from the CLI");
  bool parsed = false;
  try {
    parsed = !nlohmann::json::parse(a)["checks"].empty();
  } catch (const std::exception&) {
  }
  v.need(parsed, "report has no checks");
  v.need(strip_wall_time(a) == strip_wall_time(b), "reports differ beyond wall_time_ms");
  if (v.pass) v.detail = fmt("two runs byte-identical apart from wall_time_ms (%zu bytes)", a.size());
  return v;
}

const std::map<int, std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Verdict()>>> c = {
      {1, {"special-case identities", c01}},
      {2, {"ball closed form", c02}},
      {3, {"homogeneity", c03}},
      {4, {"total-mass identity", c04}},
      {5, {"centroid identity", c05}},
      {6, {"variational formula", c06}},
      {7, {"mean-curvature limit", c07}},
      {8, {"q->0 measure limit", c08}},
      {9, {"chord Minkowski round trip", c09}},
      {10, {"log-Minkowski round trip", c10}},
      {11, {"subspace concentration", c11}},
      {12, {"ellipsoid bound", c12}},
      {13, {"determinism", c13}},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    try {
      which.push_back(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::fprintf(stderr, "usage: %s [criterion ...]\n", argv[0]);
      return 1;
    }
  }
  if (which.empty())
    for (const auto& [k, _] : criteria()) which.push_back(k);
  int failed = 0;
  for (int k : which) {
    auto it = criteria().find(k);
    if (it == criteria().end()) {
      std::fprintf(stderr, "no criterion %d\n", k);
      return 1;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = it->second.second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("C%02d %-28s %s  %s  [%.1f s]\n", k, it->second.first.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
