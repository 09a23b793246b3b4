#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chordgeom/body.hpp"
#include "chordgeom/chord_measure.hpp"

namespace chordgeom {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Parse errors carry "line L, column C" and field errors a JSON pointer such as /normals/2/0.
json parse_json_text(const std::string& text, const std::string& source = "<input>");
json load_json_file(const std::string& path);

Body body_from_json(const json& j);
json body_to_json(const Body& K);
Body load_body(const std::string& path);

DiscreteSphericalMeasure measure_from_json(const json& j);
json measure_to_json(const DiscreteSphericalMeasure& mu);
DiscreteSphericalMeasure load_measure(const std::string& path);

struct Check {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
};

struct Report {
  std::string command;
  json inputs = json::object();
  std::vector<std::uint64_t> seeds;
  json results = json::object();
  std::vector<Check> checks;
  std::int64_t wall_time_ms = 0;
  std::string version = kVersion;

  bool all_pass() const;
};

json report_to_json(const Report& r);
Report report_from_json(const json& j);

// Numbers that may be written as decimal strings.
double read_number(const json& j, const std::string& pointer);
Vec read_vector(const json& j, const std::string& pointer, int expected_dim = -1);

}  // namespace chordgeom
