#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "chordgeom/corpus.hpp"
#include "chordgeom/io.hpp"
#include "support.hpp"

using namespace chordgeom;
using chordgeom::test::v;

namespace {

std::string error_of(const std::string& text) {
  try {
    body_from_json(parse_json_text(text));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Schema) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return {};
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(BodyJson, Kinds) {
  const Body c = body_from_json(parse_json_text(
      R"({"kind":"hpolytope","dim":2,"normals":[[1,0],[-1,0],[0,1],[0,-1]],"offsets":["1","1.5","0.25",1]})"));
  EXPECT_NEAR(volume(c), 2.5 * 1.25, 1e-14);
  const Body s = body_from_json(parse_json_text(R"({"kind":"vpolytope","dim":2,"points":[[0,0],[1,0],[0,1]]})"));
  EXPECT_NEAR(volume(s), 0.5, 1e-15);
  const Body b = body_from_json(parse_json_text(R"({"kind":"ball","dim":3,"center":[0,0,1],"radius":"0.5"})"));
  EXPECT_NEAR(volume(b), omega(3) / 8.0, 1e-15);
  const Body e = body_from_json(
      parse_json_text(R"({"kind":"ellipsoid","dim":2,"center":[0,0],"semi_axes":[2,1],"frame":[[0,1],[1,0]]})"));
  EXPECT_NEAR(support(e, v({1, 0})), 1.0, 1e-15);
}

TEST(BodyJson, RoundTrip) {
  const std::vector<Body> bodies = {random_polytope(3, 9, 60, 0), Ball(v({0.1, 0.2}), 0.3),
                                    Ellipsoid(v({0, 0, 1}), v({0.3, 0.5, 2.0})),
                                    VPolytope({v({0, 0}), v({1, 0}), v({0, 1}), v({1, 1})})};
  for (const Body& K : bodies) {
    const json j = body_to_json(K);
    const Body back = body_from_json(parse_json_text(j.dump()));
    EXPECT_EQ(body_to_json(back), j);
    EXPECT_EQ(volume(back), volume(K));
  }
}

TEST(BodyJson, FieldErrors) {
  EXPECT_TRUE(has(error_of(R"({"kind":"hpolytope","dim":2,"normals":[[1,0],[0,"x"]],"offsets":[1,1]})"),
                  "field /normals/1/1"));
  EXPECT_TRUE(has(error_of(R"({"kind":"hpolytope","dim":3,"normals":[[1,0,0],[0,1]],"offsets":[1,1]})"),
                  "field /normals/1: expected 3 entries"));
  EXPECT_TRUE(has(error_of(R"({"kind":"hpolytope","dim":2,"normals":[[1,0]],"offsets":[1,2]})"), "field /offsets"));
  EXPECT_TRUE(has(error_of(R"({"kind":"ball","dim":2,"center":[0,0]})"), "field /radius: missing required field"));
  EXPECT_TRUE(has(error_of(R"({"kind":"ball","dim":2,"center":[0,0],"radius":-1})"), "field /radius"));
  EXPECT_TRUE(has(error_of(R"({"kind":"torus","dim":2})"), "field /kind"));
  EXPECT_TRUE(has(error_of(R"({"dim":2})"), "field /kind: missing"));
  EXPECT_TRUE(has(error_of(R"({"kind":"ball","dim":2.5,"center":[0,0],"radius":1})"), "field /dim"));
  EXPECT_TRUE(has(error_of(R"({"kind":"ellipsoid","dim":2,"center":[0,0],"semi_axes":[1,1],"frame":[[1,1],[0,1]]})"),
                  "field /frame"));
  EXPECT_TRUE(has(error_of(R"({"kind":"ball","dim":2,"center":[0,0],"radius":"1e999"})"), "field /radius"));
}

TEST(BodyJson, GeometryErrorsKeepTheirCode) {
  try {
    body_from_json(parse_json_text(R"({"kind":"hpolytope","dim":2,"normals":[[1,0],[0,1],[-1,0]],"offsets":[1,1,1]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unbounded);
  }
}

TEST(Json, ParseErrorLocation) {
  try {
    parse_json_text("{\n  \"kind\": \"ball\",\n  \"dim\" 3\n}", "b.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Schema);
    EXPECT_TRUE(has(e.what(), "b.json: line 3, column")) << e.what();
  }
}

TEST(MeasureJson, RoundTripAndErrors) {
  DiscreteSphericalMeasure mu{2, {{v({1, 0}), 0.5}, {v({0.6, -0.8}), 1.25}}};
  const json j = measure_to_json(mu);
  const auto back = measure_from_json(parse_json_text(j.dump()));
  ASSERT_EQ(back.atoms.size(), 2u);
  EXPECT_EQ(back.atoms[1].u, mu.atoms[1].u);
  EXPECT_EQ(back.atoms[1].mass, 1.25);
  try {
    measure_from_json(parse_json_text(R"({"dim":2,"atoms":[{"u":[1,0],"mass":1},{"u":[1,1],"mass":1}]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(has(e.what(), "field /atoms/1/u")) << e.what();
  }
  try {
    measure_from_json(parse_json_text(R"({"dim":2,"atoms":[{"u":[1,0]}]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(has(e.what(), "field /atoms/0/mass: missing")) << e.what();
  }
}

TEST(ReportJson, Lossless) {
  Report r;
  r.command = "check";
  r.inputs = {{"suite", "identities"}, {"n", 3}};
  r.seeds = {7, 18446744073709551615ULL};
  r.results = {{"value", 0.1 + 0.2}, {"rows", json::array({1, 2.5e-300})}};
  r.checks = {{"a", true, 1.0 / 3.0, 0.5, 1e-3}, {"b", false, 2.0, 1.0, 0.0}};
  r.wall_time_ms = 12;
  const json j = report_to_json(r);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["checks"][1]["status"], "fail");
  const Report back = report_from_json(parse_json_text(j.dump()));
  EXPECT_EQ(report_to_json(back), j);
  EXPECT_EQ(back.checks[0].observed, 1.0 / 3.0);
  EXPECT_FALSE(back.all_pass());
  json bad = j;
  bad["checks"][0]["status"] = "maybe";
  try {
    report_from_json(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(has(e.what(), "field /checks/0/status")) << e.what();
  }
}

TEST(Numbers, DecimalStrings) {
  EXPECT_EQ(read_number(json("0.1"), "/x"), 0.1);
  EXPECT_EQ(read_number(json("+2.5e-3"), "/x"), 2.5e-3);
  EXPECT_CODE(read_number(json("0.1abc"), "/x"), Schema);
  EXPECT_CODE(read_number(json(true), "/x"), Schema);
  EXPECT_EQ(read_vector(json::array({"1", 2}), "/v", 2), v({1, 2}));
}
