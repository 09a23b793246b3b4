#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "app.hpp"
#include "chordgeom/parallel.hpp"

using namespace chordgeom;

int main(int argc, char** argv) {
  CLI::App cli{"chordgeom: chord integrals, chord measures and chord Minkowski problems for convex bodies"};
  cli.set_version_flag("--version", std::string(kVersion));
  cli.set_config("--config", "", "key=value config file; command-line flags take precedence");
  cli.fallthrough();
  cli.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;
  std::string csv;
  cli.add_option("--seed", seed, "Root seed for every random stream")->capture_default_str();
  cli.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  cli.add_option("--csv", csv, "Also write the main result table as CSV");

  app::ChordOptions chord;
  auto* c_chord = cli.add_subcommand("chord", "Estimate the chord integral I_q(K)");
  c_chord->add_option("body", chord.body_file, "Body JSON file")->required()->check(CLI::ExistingFile);
  c_chord->add_option("--q", chord.q, "Chord power q")->capture_default_str();
  c_chord->add_option("--method", chord.method, "auto, line_mc, volume_form, riesz_double, closed_form, projection_quadrature")
      ->capture_default_str();
  c_chord->add_option("--samples", chord.samples, "Sample count (0 = method default)")->capture_default_str();

  app::DualvOptions dv;
  auto* c_dualv = cli.add_subcommand("dualv", "Dual quermassintegral V~_q(K, z)");
  c_dualv->add_option("body", dv.body_file, "Body JSON file")->required()->check(CLI::ExistingFile);
  c_dualv->add_option("--z", dv.z, "Point, comma separated")->required()->delimiter(',');
  c_dualv->add_option("--q", dv.q, "Index q")->capture_default_str();
  c_dualv->add_option("--scheme", dv.scheme, "grid, mc or riesz")->capture_default_str();
  c_dualv->add_option("--samples", dv.samples, "Directions (mc) or points (riesz)")->capture_default_str();

  app::MeasureOptions ms;
  double lp = 0.0;
  auto* c_measure = cli.add_subcommand("measure", "Chord measure F_q, cone-chord G_q or L_p chord measure of a polytope");
  c_measure->add_option("body", ms.body_file, "Polytope JSON file")->required()->check(CLI::ExistingFile);
  c_measure->add_option("--q", ms.q, "Chord power q")->capture_default_str();
  auto* o_cone = c_measure->add_flag("--cone", ms.cone, "Cone-chord measure G_q");
  auto* o_lp = c_measure->add_option("--lp", lp, "L_p chord measure with this p");
  o_cone->excludes(o_lp);

  app::SolveOptions so;
  auto* c_solve = cli.add_subcommand("solve", "Solve the chord (log-)Minkowski problem for a discrete measure");
  c_solve->add_option("measure", so.measure_file, "Measure JSON file")->required()->check(CLI::ExistingFile);
  c_solve->add_option("--problem", so.problem, "chord or log")->capture_default_str();
  c_solve->add_option("--q", so.q, "Chord power q")->capture_default_str();
  c_solve->add_option("--max-iters", so.max_iters)->capture_default_str();
  c_solve->add_option("--step0", so.step0)->capture_default_str();
  c_solve->add_option("--armijo-c", so.armijo_c)->capture_default_str();
  c_solve->add_option("--armijo-shrink", so.armijo_shrink)->capture_default_str();
  c_solve->add_option("--grad-tol", so.grad_tol)->capture_default_str();
  c_solve->add_option("--residual-tol", so.residual_tol)->capture_default_str();
  c_solve->add_option("--tol-budget", so.tol_budget, "Measure tolerance budget added to --residual-tol")
      ->capture_default_str();
  c_solve->add_option("--body-out", so.body_out, "Write the solution body JSON here");

  app::CheckOptions ck;
  auto* c_check = cli.add_subcommand("check", "Run an invariant suite");
  c_check->add_option("suite", ck.suite, "Suite name")->required()->check(CLI::IsMember(app::suite_names()));
  c_check->add_option("--n", ck.n, "Dimension (2, 3 or 4)")->capture_default_str();

  app::SharpnessOptions sh;
  auto* c_sharp = cli.add_subcommand("sharpness", "Sharpness sequence of the subspace concentration bound");
  c_sharp->add_option("--n", sh.n)->capture_default_str();
  c_sharp->add_option("--k", sh.k)->capture_default_str();
  c_sharp->add_option("--q", sh.q)->capture_default_str();
  c_sharp->add_option("--jmax", sh.jmax)->capture_default_str();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return 1;
  }

  try {
    set_thread_count(threads);
    app::Outcome out;
    if (*c_chord) {
      chord.seed = seed;
      out = app::run_chord(chord);
    } else if (*c_dualv) {
      dv.seed = seed;
      out = app::run_dualv(dv);
    } else if (*c_measure) {
      if (*o_lp) ms.lp = lp;
      out = app::run_measure(ms);
    } else if (*c_solve) {
      so.seed = seed;
      out = app::run_solve(so);
    } else if (*c_check) {
      ck.seed = seed;
      out = app::run_check(ck);
    } else {
      out = app::run_sharpness(sh);
    }
    std::cout << app::render(out.report);
    if (!csv.empty()) {
      std::ofstream f(csv);
      if (!f) throw Error(ErrorCode::Schema, "cannot write " + csv);
      f << app::to_csv(out.table);
    }
    return out.report.all_pass() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
