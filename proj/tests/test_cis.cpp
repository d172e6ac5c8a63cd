#include "cislimit/cis.hpp"
#include "cislimit/fuzz.hpp"
#include "cislimit/gallery.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cislimit;

namespace {

using Ids = std::vector<std::string>;

bool has_clause(const ValidationReport& r, const std::string& clause) {
  for (const auto& e : r.issues) {
    if (e.clause == clause) return true;
  }
  return false;
}

std::set<std::size_t> positions(const PointSet& s) {
  std::set<std::size_t> out;
  for (auto k = s.find_first(); k != PointSet::npos; k = s.find_next(k)) out.insert(k);
  return out;
}

}  // namespace

TEST_CASE("identity systems are valid") {
  for (bool stationary : {false, true}) {
    const auto c = identity_system(sierpinski(), 3, stationary);
    CHECK(validate_cis(c).ok());
    CHECK(is_inductive(c));
    CHECK(c.stationary() == stationary);
  }
}

TEST_CASE("a non-closed Y is rejected") {
  const auto s = sierpinski();
  const auto p = point_space();
  const auto ya = s->to_set(Ids{"a"});
  std::vector<std::size_t> table{0, no_point};
  const Cis c({make_stage(s, ya, p, table), make_stage(p, p->all(), nullptr)}, Tail::cutoff());
  const auto r = validate_cis(c);
  CHECK_FALSE(r.ok());
  CHECK(has_clause(r, "Y closed"));
}

TEST_CASE("a non-closed f is rejected") {
  // Point into the open point of the Sierpiński space: image {a} is not closed.
  const auto p = point_space();
  const auto s = sierpinski();
  std::vector<std::size_t> table{s->index_of("a")};
  const Cis c({make_stage(p, p->all(), s, table), make_stage(s, s->all(), nullptr)},
              Tail::cutoff());
  CHECK_FALSE(validate_cis(c).ok());
}

TEST_CASE("a non-injective f is rejected") {
  const auto d = make_space(FinSpace::discrete({"u", "v"}));
  const auto p = point_space();
  std::vector<std::size_t> table{0, 0};
  const Cis c({make_stage(d, d->all(), p, table), make_stage(p, p->all(), nullptr)},
              Tail::cutoff());
  CHECK_FALSE(validate_cis(c).ok());
}

TEST_CASE("empty Y is permitted and flagged") {
  const auto p = point_space();
  const Cis c({make_stage(p, p->none(), p, {no_point}), make_stage(p, p->all(), nullptr)},
              Tail::cutoff());
  const auto r = validate_cis(c);
  CHECK(r.ok());
  CHECK(r.empty_y == std::vector<std::size_t>{0});
}

TEST_CASE("structural errors throw") {
  const auto p = point_space();
  CHECK_THROWS_AS(Cis({}, Tail::cutoff()), Error);
  // Stationary n0 must be the last stage.
  CHECK_THROWS_AS(Cis({make_stage(p, p->all(), p, {0}), make_stage(p, p->all(), nullptr)},
                      Tail::stationary(0)),
                  Error);
  // Table disagreeing with Y.
  CHECK_THROWS_AS(make_stage(p, p->none(), p, {0}), Error);
}

TEST_CASE("stationary systems repeat their last stage") {
  const auto c = stationary_sphere(2);
  CHECK(c.resolve(7) == 2);
  CHECK(c.has_map(2));
  CHECK(c.step(5, 1) == 1);
  const auto cut = sphere_chain(2);
  CHECK_FALSE(cut.has_map(2));
  CHECK_THROWS_AS(cut.resolve(3), Error);
}

TEST_CASE("semicomponibility on the examples") {
  const auto id = identity_system(circle_model(), 4, false);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j) CHECK(semicomponible(id, i, j));
  }

  const auto ns = non_semicomponible();
  CHECK(validate_cis(ns).ok());
  CHECK_FALSE(semicomponible(ns, 0, 1));
  CHECK(composite_domain(ns, 0, 1).none());

  const auto sc = sphere_chain(3);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j) CHECK(semicomponible(sc, i, j));
  }
}

TEST_CASE("composite injections on the examples") {
  const auto id = identity_system(sierpinski(), 3, false);
  const auto k = composite(id, 0, 1);
  CHECK(k.domain == id.space(0).all());
  CHECK(k.table == std::vector<std::size_t>{0, 1});

  const auto sc = sphere_chain(3);
  const auto k02 = composite(sc, 0, 2);
  CHECK(k02.domain == sc.space(0).all());
  CHECK(k02.map.target().size() == 8);
  CHECK(k02.map.profile().embedding);
  CHECK(k02.map.profile().closed);
  for (std::size_t x = 0; x < 2; ++x) {
    CHECK(sc.space(3).id(k02.table[x]) == sc.space(0).id(x));
  }
}

TEST_CASE("finite semicomponibility") {
  const auto ic = interval_chain(4);
  const auto f = is_finitely_semicomponible(ic);
  CHECK(f.value);
  CHECK(f.truncation_relative);
  for (std::size_t i = 0; i + 1 < ic.size(); ++i) CHECK_FALSE(semicomponible(ic, i, i + 1));

  CHECK_FALSE(is_finitely_semicomponible(identity_system(point_space(), 1, true)).value);
  CHECK_FALSE(is_finitely_semicomponible(stationary_sphere(3)).value);
  CHECK(is_stationary(stationary_sphere(3)) == std::optional<std::size_t>(3));
  CHECK_FALSE(is_stationary(sphere_chain(3)).has_value());
}

TEST_CASE("composite domains agree with a one-shot preimage") {
  FuzzRng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_cis(rng, {});
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i; j < c.size(); ++j) {
        CHECK(positions(composite_domain(c, i, j)) == oracle::composite_domain(c, i, j));
      }
    }
  }
}

TEST_CASE("semicomponibility is monotone") {
  FuzzRng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_cis(rng, {});
    const auto n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        if (semicomponible(c, i, j)) {
          for (std::size_t k = i; k <= j; ++k) {
            for (std::size_t l = k; l <= j; ++l) CHECK(semicomponible(c, k, l));
          }
        } else {
          for (std::size_t k = j + 1; k < n; ++k) CHECK_FALSE(semicomponible(c, i, k));
        }
      }
    }
  }
}

TEST_CASE("composites are injective, continuous and factor through intermediate stages") {
  FuzzRng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_cis(rng, {});
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i; j < c.size(); ++j) {
        if (!c.has_map(j)) continue;
        const auto k = composite(c, i, j);
        CHECK(k.map.profile().injective);
        CHECK(k.map.profile().continuous);
        for (std::size_t m = i; m < j; ++m) {
          const auto first = composite(c, i, m);
          const auto second = composite(c, m + 1, j);
          for (std::size_t x = 0; x < c.space(i).size(); ++x) {
            if (k.table[x] == no_point || first.table[x] == no_point) continue;
            CHECK(second.table[first.table[x]] == k.table[x]);
          }
        }
      }
    }
  }
}

TEST_CASE("generated systems are valid") {
  FuzzRng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    CisShape shape;
    shape.inductive = trial % 3 == 0;
    const auto c = random_cis(rng, shape);
    CHECK(validate_cis(c).ok());
    CHECK(c.size() <= shape.max_stages);
    if (shape.inductive) CHECK(is_inductive(c));
  }
}
