#include "chordgeom/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace chordgeom {

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Schema, "field " + (where.empty() ? std::string("/") : where) + ": " + what);
}

// Prefixes the file name, keeping a single code tag.
Error with_path(const Error& e, const std::string& path) {
  std::string msg = e.what();
  const std::string tag = std::string(error_name(e.code())) + ": ";
  if (msg.rfind(tag, 0) == 0) msg.erase(0, tag.size());
  return Error(e.code(), path + ": " + msg);
}

const json& field(const json& j, const std::string& pointer, const std::string& key) {
  if (!j.is_object()) schema_fail(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_fail(pointer + "/" + key, "missing required field");
  return *it;
}

int read_dim(const json& j) {
  const json& d = field(j, "", "dim");
  if (!d.is_number_integer() || d.get<long>() < 1) schema_fail("/dim", "expected a positive integer");
  return d.get<int>();
}

std::vector<Vec> read_vectors(const json& j, const std::string& pointer, int n) {
  if (!j.is_array() || j.empty()) schema_fail(pointer, "expected a nonempty array of vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_vector(j[i], pointer + "/" + std::to_string(i), n));
  return out;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

double read_number(const json& j, const std::string& pointer) {
  double v = 0.0;
  if (j.is_number()) {
    v = j.get<double>();
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const char* b = s.data();
    const char* e = b + s.size();
    if (b != e && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) schema_fail(pointer, "not a decimal number: \"" + s + "\"");
  } else {
    schema_fail(pointer, "expected a number or decimal string");
  }
  if (!std::isfinite(v)) schema_fail(pointer, "number must be finite");
  return v;
}

Vec read_vector(const json& j, const std::string& pointer, int expected_dim) {
  if (!j.is_array()) schema_fail(pointer, "expected an array");
  if (expected_dim >= 0 && static_cast<int>(j.size()) != expected_dim)
    schema_fail(pointer, "expected " + std::to_string(expected_dim) + " entries, got " + std::to_string(j.size()));
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = read_number(j[i], pointer + "/" + std::to_string(i));
  return v;
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::Schema,
                source + ": line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Schema, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

Body body_from_json(const json& j) {
  const json& kind_j = field(j, "", "kind");
  if (!kind_j.is_string()) schema_fail("/kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const int n = read_dim(j);
  if (n < 2 || n > 6) schema_fail("/dim", "supported dimensions are 2..6");
  if (kind == "hpolytope") {
    auto u = read_vectors(field(j, "", "normals"), "/normals", n);
    const json& off = field(j, "", "offsets");
    if (!off.is_array() || off.size() != u.size()) schema_fail("/offsets", "expected one offset per normal");
    std::vector<double> h;
    for (std::size_t i = 0; i < off.size(); ++i) h.push_back(read_number(off[i], "/offsets/" + std::to_string(i)));
    return HPolytope(u, h);
  }
  if (kind == "vpolytope") return VPolytope(read_vectors(field(j, "", "points"), "/points", n));
  if (kind == "ball") {
    const double r = read_number(field(j, "", "radius"), "/radius");
    if (!(r > 0.0)) schema_fail("/radius", "radius must be positive");
    return Ball(read_vector(field(j, "", "center"), "/center", n), r);
  }
  if (kind == "ellipsoid") {
    Vec a = read_vector(field(j, "", "semi_axes"), "/semi_axes", n);
    if ((a.array() <= 0.0).any()) schema_fail("/semi_axes", "semi-axes must be positive");
    std::optional<Mat> frame;
    if (j.contains("frame")) {
      auto cols = read_vectors(j["frame"], "/frame", n);
      if (static_cast<int>(cols.size()) != n) schema_fail("/frame", "expected n axis vectors");
      Mat F(n, n);
      for (int c = 0; c < n; ++c) F.col(c) = cols[c];
      if ((F.transpose() * F - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
        schema_fail("/frame", "axis vectors must be orthonormal");
      frame = F;
    }
    return Ellipsoid(read_vector(field(j, "", "center"), "/center", n), a, frame);
  }
  schema_fail("/kind", "unknown body kind \"" + kind + "\"");
}

json body_to_json(const Body& K) {
  json j;
  j["dim"] = dim(K);
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HPolytope>) {
          j["kind"] = "hpolytope";
          j["normals"] = json::array();
          for (const Vec& u : b.normals()) j["normals"].push_back(vec_json(u));
          j["offsets"] = b.offsets();
        } else if constexpr (std::is_same_v<T, VPolytope>) {
          j["kind"] = "vpolytope";
          j["points"] = json::array();
          for (const Vec& p : b.vertices()) j["points"].push_back(vec_json(p));
        } else if constexpr (std::is_same_v<T, Ball>) {
          j["kind"] = "ball";
          j["center"] = vec_json(b.center);
          j["radius"] = b.radius;
        } else {
          j["kind"] = "ellipsoid";
          j["center"] = vec_json(b.center());
          j["semi_axes"] = vec_json(b.semi_axes());
          j["frame"] = json::array();
          for (int c = 0; c < b.dim(); ++c) j["frame"].push_back(vec_json(b.frame().col(c)));
        }
      },
      K);
  return j;
}

Body load_body(const std::string& path) {
  const json j = load_json_file(path);
  try {
    return body_from_json(j);
  } catch (const Error& e) {
    throw with_path(e, path);
  }
}

DiscreteSphericalMeasure measure_from_json(const json& j) {
  DiscreteSphericalMeasure mu;
  mu.dim = read_dim(j);
  const json& atoms = field(j, "", "atoms");
  if (!atoms.is_array() || atoms.empty()) schema_fail("/atoms", "expected a nonempty array");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string p = "/atoms/" + std::to_string(i);
    Atom a;
    a.u = read_vector(field(atoms[i], p, "u"), p + "/u", mu.dim);
    a.mass = read_number(field(atoms[i], p, "mass"), p + "/mass");
    if (std::abs(a.u.norm() - 1.0) > 1e-9) schema_fail(p + "/u", "direction must be a unit vector");
    if (a.mass < 0.0) schema_fail(p + "/mass", "mass must be nonnegative");
    mu.atoms.push_back(std::move(a));
  }
  mu.validate();
  return mu;
}

json measure_to_json(const DiscreteSphericalMeasure& mu) {
  json j;
  j["dim"] = mu.dim;
  j["atoms"] = json::array();
  for (const Atom& a : mu.atoms) j["atoms"].push_back({{"u", vec_json(a.u)}, {"mass", a.mass}});
  return j;
}

DiscreteSphericalMeasure load_measure(const std::string& path) {
  const json j = load_json_file(path);
  try {
    return measure_from_json(j);
  } catch (const Error& e) {
    throw with_path(e, path);
  }
}

bool Report::all_pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

json report_to_json(const Report& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = r.version;
  j["command"] = r.command;
  j["inputs"] = r.inputs;
  j["seeds"] = r.seeds;
  j["results"] = r.results;
  j["checks"] = json::array();
  for (const Check& c : r.checks)
    j["checks"].push_back({{"name", c.name},
                           {"status", c.pass ? "pass" : "fail"},
                           {"observed", c.observed},
                           {"bound", c.bound},
                           {"tolerance", c.tolerance}});
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  auto str = [&](const char* k) {
    const json& v = field(j, "", k);
    if (!v.is_string()) schema_fail(std::string("/") + k, "expected a string");
    return v.get<std::string>();
  };
  r.command = str("command");
  r.version = str("version");
  r.inputs = field(j, "", "inputs");
  r.results = field(j, "", "results");
  const json& seeds = field(j, "", "seeds");
  if (!seeds.is_array()) schema_fail("/seeds", "expected an array");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!seeds[i].is_number_unsigned()) schema_fail("/seeds/" + std::to_string(i), "expected an unsigned integer");
    r.seeds.push_back(seeds[i].get<std::uint64_t>());
  }
  const json& checks = field(j, "", "checks");
  if (!checks.is_array()) schema_fail("/checks", "expected an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string p = "/checks/" + std::to_string(i);
    const json& c = checks[i];
    Check k;
    k.name = field(c, p, "name").get<std::string>();
    const std::string st = field(c, p, "status").get<std::string>();
    if (st != "pass" && st != "fail") schema_fail(p + "/status", "expected \"pass\" or \"fail\"");
    k.pass = st == "pass";
    auto num = [&](const char* key) {
      const json& v = field(c, p, key);
      return v.is_null() ? std::nan("") : read_number(v, p + "/" + key);
    };
    k.observed = num("observed");
    k.bound = num("bound");
    k.tolerance = num("tolerance");
    r.checks.push_back(std::move(k));
  }
  const json& w = field(j, "", "wall_time_ms");
  if (!w.is_number_integer()) schema_fail("/wall_time_ms", "expected an integer");
  r.wall_time_ms = w.get<std::int64_t>();
  return r;
}

}  // namespace chordgeom
