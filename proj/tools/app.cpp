#include "app.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "chordgeom/chord_integral.hpp"
#include "chordgeom/chord_measure.hpp"
#include "chordgeom/concentration.hpp"
#include "chordgeom/corpus.hpp"
#include "chordgeom/dual_quermass.hpp"
#include "chordgeom/minkowski.hpp"
#include "chordgeom/quadrature.hpp"
#include "chordgeom/rng.hpp"

namespace chordgeom::app {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), v.size()); }

void check_le(Report& r, const std::string& name, double observed, double bound, double tol) {
  r.checks.push_back({name, std::isfinite(observed) && observed <= bound + tol, observed, bound, tol});
}

void check_ge(Report& r, const std::string& name, double observed, double bound, double tol) {
  r.checks.push_back({name, std::isfinite(observed) && observed >= bound - tol, observed, bound, tol});
}

Table checks_table(const Report& r) {
  Table t{{"name", "status", "observed", "bound", "tolerance"}, {}};
  for (const Check& c : r.checks)
    t.rows.push_back({c.name, c.pass ? "pass" : "fail", num(c.observed), num(c.bound), num(c.tolerance)});
  return t;
}

json estimate_json(const ChordEstimate& e) {
  return {{"value", e.value},   {"std_error", e.std_error}, {"method", method_name(e.method)},
          {"samples", e.samples}, {"q", e.q},                 {"seed", e.seed},
          {"variance_blowup", e.variance_blowup}};
}

const char* location_name(PointLocation l) {
  switch (l) {
    case PointLocation::Interior: return "interior";
    case PointLocation::Boundary: return "boundary";
    case PointLocation::Outside: return "outside";
  }
  return "unknown";
}

HPolytope require_polytope(const Body& K) {
  if (const HPolytope* P = as_polytope(K)) return *P;
  throw Error(ErrorCode::Precondition, "this command needs a polytope body");
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) { return splitmix64(seed ^ splitmix64(tag)); }

// |est - target| <= 3 sigma + rel * target
void mc_check(Report& r, const std::string& name, const ChordEstimate& e, double target, double rel) {
  check_le(r, name, std::abs(e.value - target), 3.0 * e.std_error, rel * std::abs(target));
}

// ---------------------------------------------------------------- suites

void suite_identities(int n, std::uint64_t seed, Report& r) {
  const long N = 200000;
  std::vector<std::pair<std::string, Body>> bodies;
  bodies.emplace_back("ball", Ball(Vec::Zero(n), 1.0));
  bodies.emplace_back("cube", cube(n));
  bodies.emplace_back("polytope", random_polytope(n, 2 * n + 2, seed, 0));
  json rows = json::array();
  std::uint64_t tag = 0;
  for (const auto& [name, K] : bodies) {
    const double V = volume(K), S = surface_area(K);
    const double t0 = omega(n - 1) * S / (n * omega(n));
    const double t1 = V;
    const double tn = (n + 1.0) * V * V / omega(n);
    const auto e0 = chord_line_mc(K, 0.0, N, sub_seed(seed, ++tag));
    const auto e1 = chord_line_mc(K, 1.0, N, sub_seed(seed, ++tag));
    const auto en = chord_line_mc(K, n + 1.0, N, sub_seed(seed, ++tag));
    mc_check(r, name + "/I_0=omega_{n-1}S/(n omega_n)", e0, t0, 0.005);
    mc_check(r, name + "/I_1=V", e1, t1, 0.005);
    mc_check(r, name + "/I_{n+1}=(n+1)V^2/omega_n", en, tn, 0.005);
    rows.push_back({{"body", name}, {"I_0", estimate_json(e0)}, {"I_1", estimate_json(e1)},
                    {"I_n+1", estimate_json(en)}, {"volume", V}, {"surface_area", S}});
  }
  const double qb = 2.5;
  const auto eb = chord_line_mc(bodies[0].second, qb, N, sub_seed(seed, ++tag));
  mc_check(r, "ball/I_2.5=beta_closed_form", eb, ball_chord_integral(n, qb), 0.01);

  const HPolytope& P = std::get<HPolytope>(bodies[2].second);
  json poly = json::object();
  for (double q : {0.5, 2.0}) {
    const auto d = chord_data(P, q);
    const auto d2 = chord_data(P.scaled(2.0), q);
    const double expect = std::pow(2.0, n + q - 1.0);
    const std::string tagq = "q=" + num(q);
    check_le(r, "polytope/homogeneity/" + tagq, std::abs(d2.I / d.I - expect) / expect, 0.01, 0.0);
    double hF = 0.0, mass = 0.0;
    Vec c = Vec::Zero(n);
    for (int i = 0; i < P.size(); ++i) {
      hF += P.h()[i] * d.F[i];
      mass += d.F[i];
      c += d.F[i] * P.normals()[i];
    }
    const double scale = (n + q - 1.0) * d.I;
    check_le(r, "polytope/total_mass/" + tagq, std::abs(scale - hF) / scale, 0.01, 0.0);
    check_le(r, "polytope/centroid/" + tagq, c.norm() / mass, 1e-3, 0.0);
    poly[tagq] = {{"I", d.I}, {"I_scaled_2", d2.I}, {"F", d.F}};
  }
  r.results["bodies"] = rows;
  r.results["polytope"] = poly;
  r.results["polytope_body"] = body_to_json(P);
}

void suite_variational(int n, std::uint64_t seed, Report& r) {
  const HPolytope K = random_polytope(n, 2 * n + 2, seed, 1);
  auto g = substream(seed, stream::corpus, 0x30000);
  std::vector<double> hl, gl;
  for (int i = 0; i < K.size(); ++i) {
    hl.push_back(K.h()[i] * (0.7 + 0.6 * uniform01(g)));
    gl.push_back(2.0 * uniform01(g) - 1.0);
  }
  const HPolytope L(K.normals(), hl);
  const auto ts = halving_sequence(1e-2, 1e-4);
  std::vector<double> qs = n <= 3 ? std::vector<double>{0.5, 1.0, 2.0, n + 1.0} : std::vector<double>{2.0};
  json rows = json::array();
  for (double q : qs) {
    const std::string tq = "q=" + num(q);
    const auto T = variational_check(K, L, q, ts);
    check_ge(r, "wulff_sum/" + tq + "/rate>=", T.rate, 0.8, 0.0);
    check_le(r, "wulff_sum/" + tq + "/terminal", T.terminal_relative, 1e-3, 0.0);
    const auto Tl = log_variational_check(K, gl, q, ts);
    check_ge(r, "log_family/" + tq + "/rate>=", Tl.rate, 0.8, 0.0);
    check_le(r, "log_family/" + tq + "/terminal", Tl.terminal_relative, 1e-3, 0.0);
    for (const auto* tab : {&T, &Tl}) {
      json tr = json::array();
      for (const auto& row : tab->rows)
        tr.push_back({{"t", row.t}, {"derivative", row.derivative}, {"pairing", row.pairing}, {"mismatch", row.mismatch}});
      rows.push_back({{"q", q},
                      {"family", tab == &T ? "wulff_sum" : "log_family"},
                      {"rate", tab->rate},
                      {"terminal_relative", tab->terminal_relative},
                      {"rows", tr}});
    }
  }
  r.results["tables"] = rows;
  r.results["body"] = body_to_json(K);
}

void suite_concentration(int n, std::uint64_t seed, Report& r) {
  const int bodies = n <= 3 ? 10 : 3;
  const auto sw = concentration_sweep(n, bodies, seed, 1e-3);
  check_le(r, "subspace_concentration/violations", sw.violations, 0.0, 0.0);
  json rows = json::array();
  for (const auto& c : sw.rows)
    rows.push_back({{"body", c.body}, {"q", c.q}, {"subspace", c.subspace}, {"ratio", c.ratio}, {"bound", c.bound}});
  r.results["concentration"] = {{"worst_slack", sw.worst_slack}, {"rows", rows}};

  const int q = std::max(3, n);
  const auto sh = sharpness_sequence(1, q, n, {1, 2, 4, 8, 16});
  const double limit = sh.back().limit;
  check_ge(r, "sharpness/final>=0.95*limit", sh.back().ratio, 0.95 * limit, 0.0);
  check_le(r, "sharpness/final<=1.05*limit", sh.back().ratio, 1.05 * limit, 0.0);
  json srows = json::array();
  for (const auto& s : sh) srows.push_back({{"j", s.j}, {"ratio", s.ratio}});
  r.results["sharpness"] = {{"n", n}, {"k", 1}, {"q", q}, {"limit", limit}, {"rows", srows}};

  std::vector<double> qv;
  for (double x = 1.5; x < n + 1.0; x += 1.0) qv.push_back(x);
  const auto es = ellipsoid_bound_sweep(n, 5, qv, 100000, sub_seed(seed, 77));
  check_le(r, "ellipsoid_chord_bound/violations", es.violations, 0.0, 0.0);
  r.results["ellipsoid_bound"] = {{"q", qv}, {"checks", es.checks}, {"min_relative_slack", es.min_ratio_slack}};
}

void suite_limits(int n, std::uint64_t, Report& r) {
  const std::vector<double> qs{0.02, 0.04, 0.06, 0.08, 0.1};
  const double c = (n - 1) * omega(n - 1) / (2.0 * n);
  const Body B = Ball(Vec::Zero(n), 1.0);
  const auto fb = mean_curvature_limit(B, Vec::Unit(n, 0), qs);
  check_le(r, "mean_curvature/ball", std::abs(fb.estimate - c) / c, 0.02, 0.0);
  json rows = json::array();
  rows.push_back({{"body", "ball"}, {"estimate", fb.estimate}, {"target", c}, {"fit_residual", fb.fit_residual}});
  Vec ax = Vec::Ones(n);
  ax[n - 1] = 2.0;
  const Ellipsoid E(Vec::Zero(n), ax);
  const Body EB = E;
  for (int which = 0; which < 2; ++which) {
    const Vec z = which == 0 ? Vec(2.0 * Vec::Unit(n, n - 1)) : Vec(Vec::Unit(n, 0));
    const double target = c * ellipsoid_mean_curvature(E, z);
    const auto f = mean_curvature_limit(EB, z, qs);
    const std::string name = which == 0 ? "ellipsoid/pole" : "ellipsoid/equator";
    check_le(r, "mean_curvature/" + name, std::abs(f.estimate - target) / target, 0.05, 0.0);
    rows.push_back({{"body", name}, {"z", vec_json(z)}, {"estimate", f.estimate}, {"target", target},
                    {"fit_residual", f.fit_residual}});
  }
  r.results["mean_curvature"] = rows;
  if (n <= 3) {
    const auto L = q_zero_limit_check(B, {0.02});
    check_le(r, "q_to_0/ball/total_mass", L[0].relative_error, 0.03, 0.0);
    r.results["q_to_0"] = {{"q", L[0].q}, {"total_mass", L[0].total_mass}, {"target", L[0].target}};
  }
}

void suite_solver(int n, std::uint64_t seed, Report& r) {
  json rows = json::array();
  const HPolytope P = random_polytope(n, 2 * n + 2, seed, 2);
  // n = 4 stays on the closed-form exponents; q = 2 there costs minutes per solve.
  const std::vector<double> qs = n <= 3 ? std::vector<double>{1.0, 2.0} : std::vector<double>{1.0, n + 1.0};
  for (double q : qs) {
    const auto mu = chord_measure_polytope(P, q);
    SolverConfig cfg;
    cfg.q = q;
    const auto res = solve_chord_minkowski(mu, cfg);
    const std::string tq = "chord/q=" + num(q);
    check_le(r, tq + "/residual", res.residual, 1e-2, 0.0);
    json row = {{"problem", "chord"}, {"q", q}, {"status", status_name(res.status)}, {"residual", res.residual},
                {"iterations", res.iterations}};
    if (q == 1.0) {
      const HPolytope& S = *res.body;
      const double hd = hausdorff_distance(Body(S.translated(P.centroid() - S.centroid())), Body(P));
      check_le(r, tq + "/hausdorff_over_diam", hd / P.diameter(), 1e-3, 0.0);
      row["hausdorff"] = hd;
    }
    rows.push_back(row);
  }
  const HPolytope Sym = random_symmetric_polytope(n, n + 1, seed, 3);
  for (double q : qs) {
    const auto mu = cone_chord_measure(Sym, q);
    SolverConfig cfg;
    cfg.q = q;
    cfg.symmetric = true;
    const auto res = solve_chord_log_minkowski(mu, cfg);
    check_le(r, "log/q=" + num(q) + "/residual", res.residual, 1e-2, 0.0);
    rows.push_back({{"problem", "log"}, {"q", q}, {"status", status_name(res.status)}, {"residual", res.residual},
                    {"iterations", res.iterations}});
  }
  r.results["roundtrips"] = rows;
}

const std::map<std::string, std::function<void(int, std::uint64_t, Report&)>>& suites() {
  static const std::map<std::string, std::function<void(int, std::uint64_t, Report&)>> s = {
      {"identities", suite_identities},
      {"variational", suite_variational},
      {"concentration", suite_concentration},
      {"limits", suite_limits},
      {"solver-roundtrip", suite_solver}};
  return s;
}

template <class F>
Outcome timed(const std::string& command, F&& body) {
  const auto t0 = Clock::now();
  Outcome o;
  o.report.command = command;
  body(o);
  o.report.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  return o;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : suites()) v.push_back(k);
    return v;
  }();
  return names;
}

Outcome run_chord(const ChordOptions& o) {
  return timed("chord", [&](Outcome& out) {
    const Body K = load_body(o.body_file);
    const int n = dim(K);
    auto& r = out.report;
    r.inputs = {{"body", body_to_json(K)}, {"q", o.q}, {"method", o.method}, {"samples", o.samples}, {"seed", o.seed}};
    r.seeds = {o.seed};
    std::string method = o.method;
    if (method == "auto") {
      if (chord_closed(K, o.q))
        method = "closed_form";
      else if (as_polytope(K) && n <= 4)
        method = "projection_quadrature";
      else
        method = "line_mc";
    }
    ChordEstimate e;
    switch (parse_method(method)) {
      case ChordMethod::LineMC:
        e = chord_line_mc(K, o.q, o.samples > 0 ? o.samples : default_line_samples(n), o.seed);
        break;
      case ChordMethod::VolumeForm:
        e = chord_volume_form(K, o.q, o.samples > 0 ? o.samples : 20000, SphereQuadrature::default_for(n, o.seed),
                              o.seed);
        break;
      case ChordMethod::RieszDouble:
        e = chord_riesz_double(K, o.q, o.samples > 0 ? o.samples : 1000000, o.seed);
        break;
      case ChordMethod::ClosedForm: {
        auto c = chord_closed(K, o.q);
        if (!c) throw Error(ErrorCode::Precondition, "no closed form for this body and q");
        e = *c;
        break;
      }
      case ChordMethod::ProjectionQuadrature:
        e = chord_projection(require_polytope(K), o.q);
        break;
    }
    r.results["estimate"] = estimate_json(e);
    out.table = {{"method", "q", "value", "std_error", "samples", "seed"},
                 {{method_name(e.method), num(e.q), num(e.value), num(e.std_error), std::to_string(e.samples),
                   std::to_string(e.seed)}}};
  });
}

Outcome run_dualv(const DualvOptions& o) {
  return timed("dualv", [&](Outcome& out) {
    const Body K = load_body(o.body_file);
    const int n = dim(K);
    if (static_cast<int>(o.z.size()) != n)
      throw Error(ErrorCode::Precondition, "--z needs " + std::to_string(n) + " coordinates");
    const Vec z = to_vec(o.z);
    auto& r = out.report;
    r.inputs = {{"body", body_to_json(K)}, {"z", o.z}, {"q", o.q}, {"scheme", o.scheme}, {"samples", o.samples},
                {"seed", o.seed}};
    r.seeds = {o.seed};
    const auto loc = locate(K, z);
    r.results["location"] = location_name(loc);
    double value = 0.0, se = 0.0;
    if (o.scheme == "riesz") {
      const auto v = riesz_dual_v(K, z, o.q, o.samples, o.seed);
      value = v.value;
      se = v.std_error;
      r.results["integrability_warning"] = v.integrability_warning;
    } else {
      SphereQuadrature Q;
      if (o.scheme == "grid")
        Q = SphereQuadrature::default_for(n, o.seed);
      else if (o.scheme == "mc")
        Q = SphereQuadrature::monte_carlo(n, static_cast<int>(o.samples), o.seed);
      else
        throw Error(ErrorCode::Precondition, "unknown scheme '" + o.scheme + "' (grid, mc, riesz)");
      if (loc == PointLocation::Outside) {
        const auto s = dual_v_signed(K, z, o.q, Q);
        r.results["plus"] = s.plus;
        r.results["minus"] = s.minus;
        value = s.value();
      } else {
        value = dual_v(K, z, o.q, Q);
      }
    }
    r.results["value"] = value;
    r.results["std_error"] = se;
    out.table = {{"scheme", "q", "value", "std_error"}, {{o.scheme, num(o.q), num(value), num(se)}}};
  });
}

Outcome run_measure(const MeasureOptions& o) {
  return timed("measure", [&](Outcome& out) {
    const Body K = load_body(o.body_file);
    const HPolytope P = require_polytope(K);
    auto& r = out.report;
    if (o.cone && o.lp) throw Error(ErrorCode::Precondition, "--cone and --lp are exclusive");
    std::string kind = "chord";
    DiscreteSphericalMeasure mu;
    if (o.cone) {
      kind = "cone_chord";
      mu = cone_chord_measure(P, o.q);
    } else if (o.lp) {
      kind = "lp_chord";
      mu = lp_chord_measure(P, *o.lp, o.q);
    } else {
      mu = chord_measure_polytope(P, o.q);
    }
    r.inputs = {{"body", body_to_json(K)}, {"q", o.q}, {"kind", kind}};
    if (o.lp) r.inputs["p"] = *o.lp;
    const auto d = measure_diagnostics(mu);
    r.results["measure"] = measure_to_json(mu);
    r.results["I"] = chord_data(P, o.q).I;
    r.results["diagnostics"] = {{"total_mass", d.total_mass},
                                {"centroid_relative", d.total_mass > 0 ? d.centroid_vector.norm() / d.total_mass : 0.0},
                                {"hemisphere_margin", d.hemisphere_margin},
                                {"degenerate", d.degenerate}};
    Table t;
    for (int i = 0; i < mu.dim; ++i) t.header.push_back("u" + std::to_string(i + 1));
    t.header.push_back("mass");
    for (const Atom& a : mu.atoms) {
      std::vector<std::string> row;
      for (int i = 0; i < mu.dim; ++i) row.push_back(num(a.u[i]));
      row.push_back(num(a.mass));
      t.rows.push_back(row);
    }
    out.table = t;
  });
}

Outcome run_solve(const SolveOptions& o) {
  return timed("solve", [&](Outcome& out) {
    const auto mu = load_measure(o.measure_file);
    auto& r = out.report;
    SolverConfig cfg;
    cfg.q = o.q;
    cfg.max_iters = o.max_iters;
    cfg.step0 = o.step0;
    cfg.armijo_c = o.armijo_c;
    cfg.armijo_shrink = o.armijo_shrink;
    cfg.grad_tol = o.grad_tol;
    cfg.residual_tol = o.residual_tol;
    cfg.measure_tol_budget = o.tol_budget;
    cfg.seed = o.seed;
    r.inputs = {{"measure", measure_to_json(mu)}, {"problem", o.problem}, {"q", o.q}, {"max_iters", o.max_iters},
                {"step0", o.step0}, {"armijo_c", o.armijo_c}, {"armijo_shrink", o.armijo_shrink},
                {"grad_tol", o.grad_tol}, {"residual_tol", o.residual_tol}, {"tol_budget", o.tol_budget},
                {"seed", o.seed}};
    r.seeds = {o.seed};
    SolverResult res;
    if (o.problem == "chord") {
      res = solve_chord_minkowski(mu, cfg);
    } else if (o.problem == "log") {
      cfg.symmetric = true;
      res = solve_chord_log_minkowski(mu, cfg);
    } else {
      throw Error(ErrorCode::Precondition, "--problem must be chord or log");
    }
    r.results = {{"status", status_name(res.status)},
                 {"residual", res.residual},
                 {"unmatched_atoms", res.unmatched_atoms},
                 {"scale_lambda", res.scale_lambda},
                 {"iterations", res.iterations},
                 {"grad_norm", res.grad_norm},
                 {"objective_trace", res.objective_trace},
                 {"body", body_to_json(*res.body)}};
    check_le(r, "residual", res.residual, cfg.residual_tol, cfg.measure_tol_budget);
    if (!o.body_out.empty()) {
      std::ofstream f(o.body_out);
      if (!f) throw Error(ErrorCode::Schema, "cannot write " + o.body_out);
      f << body_to_json(*res.body).dump(2) << "\n";
    }
    Table t{{"iteration", "objective"}, {}};
    for (std::size_t i = 0; i < res.objective_trace.size(); ++i)
      t.rows.push_back({std::to_string(i), num(res.objective_trace[i])});
    out.table = t;
  });
}

Outcome run_check(const CheckOptions& o) {
  return timed("check", [&](Outcome& out) {
    auto it = suites().find(o.suite);
    if (it == suites().end()) throw Error(ErrorCode::Precondition, "unknown suite '" + o.suite + "'");
    if (o.n < 2 || o.n > 4) throw Error(ErrorCode::Precondition, "check suites run for n in {2, 3, 4}");
    auto& r = out.report;
    r.inputs = {{"suite", o.suite}, {"n", o.n}, {"seed", o.seed}};
    r.seeds = {o.seed};
    it->second(o.n, o.seed, r);
    out.table = checks_table(r);
  });
}

Outcome run_sharpness(const SharpnessOptions& o) {
  return timed("sharpness", [&](Outcome& out) {
    auto& r = out.report;
    r.inputs = {{"n", o.n}, {"k", o.k}, {"q", o.q}, {"jmax", o.jmax}};
    if (o.jmax < 1) throw Error(ErrorCode::Precondition, "--jmax must be positive");
    std::vector<int> js;
    for (int j = 1; j <= o.jmax; j *= 2) js.push_back(j);
    const auto rows = sharpness_sequence(o.k, o.q, o.n, js);
    json jr = json::array();
    Table t{{"j", "ratio", "limit"}, {}};
    for (const auto& s : rows) {
      jr.push_back({{"j", s.j}, {"ratio", s.ratio}});
      t.rows.push_back({std::to_string(s.j), num(s.ratio), num(s.limit)});
    }
    const double limit = rows.back().limit;
    r.results = {{"limit", limit}, {"rows", jr}};
    check_le(r, "final_within_5pct_of_limit", std::abs(rows.back().ratio - limit) / limit, 0.05, 0.0);
    out.table = t;
  });
}

std::string to_csv(const Table& t) {
  auto esc = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
  };
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << esc(v[i]);
    os << "\n";
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return os.str();
}

std::string render(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

}  // namespace chordgeom::app
