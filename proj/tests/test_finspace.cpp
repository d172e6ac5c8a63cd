#include "cislimit/finspace.hpp"
#include "cislimit/fuzz.hpp"
#include "cislimit/gallery.hpp"
#include "cislimit/homology.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cislimit;

namespace {

using Ids = std::vector<std::string>;

PointSet set_of(const FinSpace& x, const Ids& ids) { return x.to_set(ids); }

SpacePtr discrete(const Ids& ids) { return make_space(FinSpace::discrete(ids)); }

oracle::Mask mask(const PointSet& s) {
  oracle::Mask m = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.test(k)) m |= oracle::bit(k);
  }
  return m;
}

PointSet from_mask(const FinSpace& x, oracle::Mask m) {
  PointSet s = x.none();
  for (std::size_t k = 0; k < x.size(); ++k) s[k] = (m & oracle::bit(k)) != 0;
  return s;
}

}  // namespace

TEST_CASE("construction rejects a point outside its own minimal open set") {
  CHECK_THROWS_AS(FinSpace::from_ids({"a", "b"}, {{"a", {"b"}}, {"b", {"b"}}}), Error);
}

TEST_CASE("construction rejects minimal open sets that are not nested") {
  // b ∈ U_a but U_b = {b, c} ⊄ U_a.
  CHECK_THROWS_AS(
      FinSpace::from_ids({"a", "b", "c"}, {{"a", {"a", "b"}}, {"b", {"b", "c"}}, {"c", {"c"}}}),
      Error);
}

TEST_CASE("identifiers are sorted and looked up by name") {
  const auto x = FinSpace::discrete({"z", "a", "m"});
  CHECK(x.ids() == Ids{"a", "m", "z"});
  CHECK(x.index_of("m") == 1);
  CHECK_FALSE(x.find("q").has_value());
  CHECK_THROWS_AS(x.index_of("q"), Error);
}

TEST_CASE("closure on the examples") {
  const auto s = sierpinski();
  CHECK(s->to_ids(set_closure(*s, Ids{"a"})) == Ids{"a", "b"});
  CHECK(set_closure(*s, s->none()).none());

  const auto c = circle_model();
  CHECK(c->to_ids(set_closure(*c, Ids{"p"})) == Ids{"a", "b", "p"});
  CHECK(c->to_ids(set_closure(*c, Ids{"a"})) == Ids{"a"});
}

TEST_CASE("closure matches the intersection of closed supersets") {
  FuzzRng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_space(rng, rng.between(1, 5), "x");
    for (oracle::Mask m = 0; m <= oracle::full(*x); ++m) {
      const auto a = from_mask(*x, m);
      CHECK(mask(x->closure(a)) == oracle::closure(*x, m));
      CHECK(x->is_open(a) == oracle::is_open(*x, m));
    }
  }
}

TEST_CASE("map classification on the examples") {
  const auto s = sierpinski();
  const auto id = FinMap::identity(s);
  CHECK(id.profile() == MapProfile{true, true, true, true, true});

  const auto d = discrete({"u", "v"});
  const auto k = FinMap::constant(d, s, s->index_of("a"));
  CHECK(k.profile().continuous);
  CHECK_FALSE(k.profile().closed);
  CHECK_FALSE(k.profile().injective);

  const auto s0 = discrete({"a", "b"});
  const auto inc = FinMap::from_ids(s0, circle_model(), {{"a", "a"}, {"b", "b"}});
  CHECK(inc.profile().continuous);
  CHECK(inc.profile().closed);
  CHECK(inc.profile().injective);
  CHECK(inc.profile().embedding);
  CHECK_FALSE(inc.profile().surjective);
}

TEST_CASE("classification agrees with brute force on small spaces") {
  FuzzRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_space(rng, rng.between(1, 4), "a", 40);
    const auto b = random_space(rng, rng.between(1, 4), "b", 40);
    std::vector<std::size_t> to(a->size());
    for (auto& t : to) t = rng.below(b->size());
    const FinMap m(a, b, to);
    CHECK(m.profile().continuous == oracle::continuous(m));
    CHECK(m.profile().closed == oracle::closed_map(m));
    CHECK(classify_map(m) == m.profile());
  }
}

TEST_CASE("subspaces") {
  const auto s = sierpinski();
  CHECK(subspace(s, s->all()).space->size() == 2);
  CHECK(*subspace(s, s->all()).space == *s);
  CHECK(subspace(s, set_of(*s, {"b"})).space->size() == 1);

  const auto c = circle_model();
  const auto sub = subspace(c, set_of(*c, {"a", "b"}));
  CHECK(separation_profile(*sub.space).discrete);
  CHECK(sub.inclusion.profile().embedding);
}

TEST_CASE("coproducts") {
  const auto p = point_space();
  const std::vector<SpacePtr> two{p, p};
  const auto sum = coproduct(two);
  CHECK(sum.space->size() == 2);
  CHECK(separation_profile(*sum.space).discrete);
  CHECK(sum.space->ids() == Ids{coproduct_label(0, "*"), coproduct_label(1, "*")});

  const std::vector<SpacePtr> ss{sierpinski(), sierpinski()};
  const auto s2 = coproduct(ss);
  CHECK(s2.space->size() == 4);
  CHECK(components(*s2.space).size() == 2);
  for (const auto& inj : s2.injections) CHECK(inj.profile().embedding);
  const auto a0 = s2.space->index_of("0:a");
  CHECK(s2.space->to_ids(s2.space->min_open(a0)) == Ids{"0:a"});
  CHECK(s2.space->to_ids(s2.space->min_open(s2.space->index_of("1:b"))) == Ids{"1:a", "1:b"});
}

TEST_CASE("quotients") {
  const auto c = circle_model();
  std::vector<std::size_t> singletons(c->size());
  for (std::size_t k = 0; k < c->size(); ++k) singletons[k] = k;
  CHECK(oracle::homeomorphic(*quotient_by_labels(c, singletons).space, *c));

  const auto d = discrete({"u", "v"});
  const std::vector<std::size_t> one{0, 0};
  CHECK(quotient_by_labels(d, one).space->size() == 1);

  // Merge p and q.
  std::vector<std::size_t> lab{0, 1, 2, 2};
  const auto q = quotient_by_labels(c, lab);
  CHECK(q.space->size() == 3);
  CHECK(betti_mod2(order_complex(*q.space), 2) == std::vector<std::size_t>{1, 0, 0});
  CHECK(q.projection.profile().continuous);
  CHECK(q.projection.profile().surjective);
}

TEST_CASE("quotient topology is the final topology of the projection") {
  FuzzRng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto x = random_space(rng, rng.between(1, 6), "x");
    std::vector<std::size_t> lab(x->size());
    for (auto& l : lab) l = rng.below(3);
    const auto q = quotient_by_labels(x, lab);
    const std::vector<FinMap> maps{q.projection};
    const auto up = oracle::final_topology(q.space->size(), maps);
    for (std::size_t p = 0; p < q.space->size(); ++p) {
      CHECK(oracle::up_mask(*q.space, p) == up[p]);
    }
    CHECK(final_space(*q.space, maps) == *q.space);
  }
}

TEST_CASE("products") {
  const auto s = sierpinski();
  CHECK(oracle::homeomorphic(product(*s, *point_space()), *s));

  const auto ss = product(*s, *s);
  CHECK(ss.size() == 4);
  const auto aa = ss.index_of(pair_label("a", "a"));
  CHECK(ss.to_ids(ss.min_open(aa)) == Ids{"(a,a)"});
  CHECK(ss.to_ids(ss.min_open(ss.index_of("(a,b)"))) == Ids{"(a,a)", "(a,b)"});
  CHECK(ss.to_ids(ss.min_open(ss.index_of("(b,b)"))).size() == 4);

  CHECK(product(*circle_model(), *circle_model()).size() == 16);
}

TEST_CASE("final topology on the examples") {
  const auto c = circle_model();
  const std::vector<FinMap> same{FinMap::identity(c)};
  CHECK(final_space(*c, same) == *c);

  const auto p = point_space();
  const auto two = discrete({"u", "v"});
  const std::vector<Leg> legs{{p, {0}}, {p, {1}}};
  CHECK(separation_profile(final_space(two->ids(), legs)).discrete);
}

TEST_CASE("final topology matches brute force") {
  FuzzRng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto target = random_space(rng, rng.between(1, 5), "t");
    std::vector<FinMap> maps;
    const auto legs = rng.between(1, 3);
    for (std::size_t k = 0; k < legs; ++k) {
      const auto src = random_space(rng, rng.between(1, 4), "s" + std::to_string(k));
      std::vector<std::size_t> to(src->size());
      for (auto& t : to) t = rng.below(target->size());
      maps.emplace_back(src, target, to);
    }
    const auto got = final_space(*target, maps);
    const auto want = oracle::final_topology(target->size(), maps);
    for (std::size_t p = 0; p < got.size(); ++p) CHECK(oracle::up_mask(got, p) == want[p]);
  }
}

TEST_CASE("homeomorphism search") {
  const auto c = circle_model();
  const auto self = find_homeomorphism(c, c);
  REQUIRE(self.status == SearchStatus::found);
  CHECK(self.map->is_homeomorphism());

  CHECK(find_homeomorphism(sierpinski(), discrete({"a", "b"})).status == SearchStatus::none);

  const auto renamed = make_space(FinSpace::from_ids(
      {"w", "x", "y", "z"},
      {{"w", {"w"}}, {"x", {"x"}}, {"y", {"y", "w", "x"}}, {"z", {"z", "w", "x"}}}));
  const auto r = find_homeomorphism(c, renamed);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.map->profile().embedding);
  CHECK(r.map->inverse()->profile().embedding);
}

TEST_CASE("homeomorphism search agrees with the permutation oracle") {
  FuzzRng rng(8);
  for (int trial = 0; trial < 80; ++trial) {
    const auto n = rng.between(1, 5);
    const auto a = random_space(rng, n, "a", 35);
    const auto b = random_space(rng, n, "b", 35);
    const auto r = find_homeomorphism(a, b);
    CHECK((r.status == SearchStatus::found) == oracle::homeomorphic(*a, *b));
    if (r.map) {
      CHECK(r.map->profile().embedding);
      CHECK(r.map->profile().surjective);
      CHECK(r.map->inverse()->profile().embedding);
    }
  }
}

TEST_CASE("homeomorphism search is undecided above the cap") {
  const auto t = torus_model(2);
  CHECK(find_homeomorphism(t, t, 8).status == SearchStatus::undecided);
}

TEST_CASE("composition checks its spaces") {
  const auto s = sierpinski();
  const auto c = circle_model();
  const auto f = FinMap::identity(s);
  const auto g = FinMap::identity(c);
  CHECK_THROWS_AS(compose(g, f), Error);
  CHECK(compose(f, f) == f);
}

TEST_CASE("separation") {
  CHECK(separation_profile(*sierpinski()).t0);
  CHECK_FALSE(separation_profile(*sierpinski()).t1);
  CHECK(separation_profile(FinSpace::discrete({"a", "b"})).t1);
  CHECK_FALSE(separation_profile(FinSpace::indiscrete({"a", "b"})).t0);
}
