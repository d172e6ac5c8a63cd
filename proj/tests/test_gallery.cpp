#include "cislimit/gallery.hpp"
#include "cislimit/limit.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cislimit;

TEST_CASE("named spaces") {
  CHECK(named_space("point")->size() == 1);
  CHECK(named_space("discrete2")->size() == 2);
  CHECK(named_space("circle")->size() == 4);
  CHECK(named_space("sphere4")->size() == 10);
  CHECK(named_space("torus2")->size() == 16);
  CHECK_THROWS_AS(named_space("klein"), Error);
}

TEST_CASE("sphere models are unions of two cones") {
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto s = sphere_model(n);
    CHECK(s->size() == 2 * (n + 1));
    CHECK(separation_profile(*s).t0);
  }
}

TEST_CASE("identity on the Sierpiński space") {
  const auto c = build_example({"identity", {"sierpinski", "3"}});
  CHECK(validate_cis(c).ok());
  CHECK(is_inductive(c));
  CHECK(c.size() == 3);
  CHECK(build_example({"identity", {"sierpinski", "3", "stationary"}}).stationary());
}

TEST_CASE("sphere chain stages and inclusions") {
  const auto c = sphere_chain(2);
  CHECK(validate_cis(c).ok());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(oracle::homeomorphic(c.space(i), *sphere_model(i)));
  }
  for (std::size_t i = 0; i < 2; ++i) {
    const auto f = c.total_map(i);
    CHECK(oracle::continuous(f));
    CHECK(oracle::closed_map(f));
    CHECK(f.profile().embedding);
  }
}

TEST_CASE("interval chain is finitely semicomponible") {
  const auto c = interval_chain(3);
  CHECK(validate_cis(c).ok());
  CHECK(is_finitely_semicomponible(c).value);
  CHECK_FALSE(is_inductive(c));
}

TEST_CASE("every gallery system is valid") {
  for (const auto& id : std::vector<GalleryId>{{"identity", {"point", "2"}},
                                               {"identity", {"circle", "4", "cutoff"}},
                                               {"sphere_chain", {"4"}},
                                               {"stationary_sphere", {"3"}},
                                               {"torus_chain", {"3"}},
                                               {"interval_chain", {"5"}},
                                               {"non_semicomponible", {}},
                                               {"sphere_truncation", {"4", "2"}}}) {
    CAPTURE(id.name);
    CHECK(validate_cis(build_example(id)).ok());
  }
  CHECK(gallery_names().size() >= 7);
}

TEST_CASE("gallery parameters are checked") {
  CHECK_THROWS_AS(build_example({"sphere_chain", {"7"}}), Error);
  CHECK_THROWS_AS(build_example({"torus_chain", {"4"}}), Error);
  CHECK_THROWS_AS(build_example({"sphere_chain", {"x"}}), Error);
  CHECK_THROWS_AS(build_example({"nonsense", {}}), Error);
}

TEST_CASE("sphere truncations stop growing at k") {
  const auto c = sphere_truncation(4, 2);
  CHECK(c.size() == 5);
  CHECK(c.space(4).size() == 6);
  CHECK(c.total_map(3).is_homeomorphism());
}

TEST_CASE("relabeling keeps the structure") {
  const auto c = sphere_chain(2);
  const auto r = relabel(c, "'");
  CHECK(validate_cis(r).ok());
  CHECK(r.space(1).ids().front() == c.space(1).ids().front() + "'");
  CHECK(oracle::homeomorphic(*build_fundamental(r).x, *build_fundamental(c).x));
}
