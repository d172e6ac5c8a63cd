#include "cislimit/fuzz.hpp"
#include "cislimit/gallery.hpp"
#include "cislimit/io.hpp"

#include <doctest.h>

#include <functional>
#include <string>

using namespace cislimit;

namespace {

CisPtr share(Cis c) { return std::make_shared<const Cis>(std::move(c)); }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("spaces round-trip") {
  for (const auto& x : {point_space(), circle_model(), torus_model(2)}) {
    CHECK(*space_from_json(space_to_json(*x)) == *x);
  }
}

TEST_CASE("systems round-trip through text") {
  FuzzRng rng(73);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = random_cis(rng, {});
    const auto back = cis_from_json(parse_json(cis_to_json(c).dump()));
    CHECK(back == c);
    CHECK(validate_cis(back).ok());
  }
  const auto s = stationary_sphere(2);
  CHECK(cis_from_json(cis_to_json(s)) == s);
}

TEST_CASE("limits, morphisms and diagrams round-trip") {
  const auto c = share(interval_chain(3));
  const auto ls = build_fundamental(*c);
  const auto back = limit_from_json(limit_to_json(ls), *c);
  CHECK(*back.x == *ls.x);
  CHECK(back.phis == ls.phis);
  CHECK(verify_limit_axioms(*c, back).passed());

  const auto m = collapse_morphism(c);
  const auto mb = morphism_from_json(morphism_to_json(m));
  CHECK(mb == m);
  CHECK(validate_morphism(mb).ok());

  const auto d = sphere_truncation_diagram(2);
  const auto db = diagram_from_json(diagram_to_json(d));
  REQUIRE(db.objects.size() == d.objects.size());
  for (std::size_t n = 0; n < d.arrows.size(); ++n) CHECK(db.arrows[n] == d.arrows[n]);

  const auto mat = Gf2Matrix::from_rows({{0, 1}, {1, 1}});
  CHECK(matrix_from_json(matrix_to_json(mat)) == mat);
}

TEST_CASE("syntax errors report the line") {
  const auto msg = error_of([] { parse_json("{\n\"stages\": [\n,]}", "doc.json"); });
  CHECK(contains(msg, "doc.json:3"));
}

TEST_CASE("schema errors report the field path") {
  auto j = cis_to_json(sphere_chain(1));
  j["stages"][0]["y"][0] = "zz";
  CHECK(contains(error_of([&] { cis_from_json(j); }), "$.stages[0].y[0]"));

  auto k = cis_to_json(sphere_chain(1));
  k["stages"][0]["f"]["a"] = "nowhere";
  CHECK(contains(error_of([&] { cis_from_json(k); }), "$.stages[0].f"));

  auto t = cis_to_json(sphere_chain(1));
  t["tail"]["kind"] = "sideways";
  CHECK(contains(error_of([&] { cis_from_json(t); }), "$.tail"));

  CHECK(contains(error_of([] { space_from_json(Json::parse(R"({"points": 3})")); }),
                 "$.points"));
  CHECK(contains(error_of([] { matrix_from_json(Json::parse("[[0, 2]]")); }), "$"));
}

TEST_CASE("point maps must be total") {
  const auto s = sierpinski();
  CHECK_THROWS(map_from_json(Json::parse(R"({"a": "a"})"), s, s));
  CHECK(map_from_json(map_to_json(FinMap::identity(s)), s, s) == FinMap::identity(s));
}

TEST_CASE("DOT output draws the reduced specialization order") {
  const auto dot = to_dot(*sierpinski(), "s");
  CHECK(contains(dot, "digraph \"s\""));
  CHECK(contains(dot, "\"a\" -> \"b\";"));
  CHECK_FALSE(contains(dot, "\"b\" -> \"a\""));

  // In a three-point chain only the covering edges survive.
  const auto chain = FinSpace::from_ids(
      {"x", "y", "z"}, {{"x", {"x"}}, {"y", {"x", "y"}}, {"z", {"x", "y", "z"}}});
  const auto c = to_dot(chain);
  CHECK(contains(c, "\"x\" -> \"y\";"));
  CHECK(contains(c, "\"y\" -> \"z\";"));
  CHECK_FALSE(contains(c, "\"x\" -> \"z\";"));
}
