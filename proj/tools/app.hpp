#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chordgeom/io.hpp"

namespace chordgeom::app {

struct ChordOptions {
  std::string body_file;
  double q = 1.0;
  std::string method = "auto";
  long samples = 0;  // 0 picks the method default
  std::uint64_t seed = 0;
};

struct DualvOptions {
  std::string body_file;
  std::vector<double> z;
  double q = 1.0;
  std::string scheme = "grid";  // grid | mc | riesz
  long samples = 200000;
  std::uint64_t seed = 0;
};

struct MeasureOptions {
  std::string body_file;
  double q = 1.0;
  bool cone = false;
  std::optional<double> lp;
};

struct SolveOptions {
  std::string measure_file;
  std::string problem = "chord";
  double q = 1.0;
  int max_iters = 400;
  double step0 = 1.0;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double grad_tol = 1e-10;
  double residual_tol = 1e-4;
  double tol_budget = 0.0;
  std::uint64_t seed = 0;
  std::string body_out;
};

struct CheckOptions {
  std::string suite;
  int n = 3;
  std::uint64_t seed = 0;
};

struct SharpnessOptions {
  int n = 3;
  int k = 1;
  int q = 3;
  int jmax = 16;
};

// CSV table attached to a report: header plus rows.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  Report report;
  Table table;
};

Outcome run_chord(const ChordOptions& o);
Outcome run_dualv(const DualvOptions& o);
Outcome run_measure(const MeasureOptions& o);
Outcome run_solve(const SolveOptions& o);
Outcome run_check(const CheckOptions& o);
Outcome run_sharpness(const SharpnessOptions& o);

const std::vector<std::string>& suite_names();

std::string to_csv(const Table& t);
// Report JSON with a trailing newline; byte-stable for identical inputs apart from wall_time_ms.
std::string render(const Report& r);

}  // namespace chordgeom::app
