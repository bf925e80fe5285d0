#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cantordyn/errors.hpp"
#include "cantordyn/finite_system.hpp"
#include "cantordyn/fraisse.hpp"
#include "cantordyn/morphisms.hpp"
#include "oracles.hpp"

using namespace cantordyn;

TEST_SUITE("morphisms") {

TEST_CASE("map construction validates shape") {
  const auto c4 = FiniteSystem::cycle(4);
  const auto c2 = FiniteSystem::cycle(2);
  CHECK_THROWS_AS(EquivariantMap(c4, c2, {0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(EquivariantMap(c4, c2, {0, 1, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(EquivariantMap(c4, c2, {0, 1, 0, -1}),
                  std::invalid_argument);
  const EquivariantMap f(c4, c2, {0, 1, 0, 1});
  CHECK(f(3) == 1);
  CHECK_THROWS_AS(f(4), std::invalid_argument);
}

TEST_CASE("equivariance and surjectivity checks") {
  const auto c4 = FiniteSystem::cycle(4);
  const auto c2 = FiniteSystem::cycle(2);
  CHECK(is_equivariant({c4, c2, {0, 1, 0, 1}}));
  CHECK(is_equivariant({c4, c2, {1, 0, 1, 0}}));
  CHECK_FALSE(is_equivariant({c4, c2, {0, 0, 1, 1}}));
  CHECK(is_surjective({c4, c2, {0, 1, 0, 1}}));
  CHECK_FALSE(is_surjective({c4, c2, {0, 0, 0, 0}}));

  // Relation target: arrows must land on arrows.
  const auto chain = FiniteSystem::relation(2, {{0, 1}, {1, 1}});
  const auto c3 = FiniteSystem::cycle(3);
  CHECK(is_equivariant({c3, chain, {1, 1, 1}}));
  CHECK_FALSE(is_equivariant({c3, chain, {0, 1, 1}}));  // no arrow 1 -> 0
}

TEST_CASE("identity and composition") {
  const auto c6 = FiniteSystem::cycle(6);
  const auto c3 = FiniteSystem::cycle(3);
  const auto c2 = FiniteSystem::cycle(2);
  const auto id = identity_map(c6);
  CHECK(id.assignment() == std::vector<State>{0, 1, 2, 3, 4, 5});

  const EquivariantMap mod3(c6, c3, {0, 1, 2, 0, 1, 2});
  const EquivariantMap parity(c3, c2, {0, 1, 0});  // not equivariant; shape ok
  const auto composite = compose(parity, mod3);
  CHECK(composite.assignment() == std::vector<State>{0, 1, 0, 0, 1, 0});
  CHECK(compose(mod3, id).assignment() == mod3.assignment());

  const EquivariantMap mod2(c6, c2, {0, 1, 0, 1, 0, 1});
  CHECK_THROWS_AS(compose(mod2, mod3), std::invalid_argument);
}

TEST_CASE("product of cycles") {
  const auto p = product(FiniteSystem::cycle(2), FiniteSystem::cycle(3));
  CHECK(p.system.size() == 6);
  CHECK(p.system.label(0) == "(0,0)");
  CHECK(p.system.label(5) == "(1,2)");
  const auto dec = cycle_decomposition(p.system);
  CHECK(dec.lengths == std::vector<std::size_t>{6});
  CHECK(is_equivariant(p.onto_first));
  CHECK(is_surjective(p.onto_first));
  CHECK(is_equivariant(p.onto_second));
  CHECK(is_surjective(p.onto_second));

  // C_2 x C_2 splits into two 2-cycles.
  const auto q = product(FiniteSystem::cycle(2), FiniteSystem::cycle(2));
  CHECK(cycle_decomposition(q.system).lengths ==
        std::vector<std::size_t>{2, 2});

  CHECK_THROWS_AS(product(FiniteSystem::relation(1, {{0, 0}}),
                          FiniteSystem::cycle(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(product(FiniteSystem::cycle(4097),
                          FiniteSystem::cycle(4096)),
                  resource_limit_error);
}

TEST_CASE("product projections across all pairs of cycle types up to 4") {
  std::vector<std::vector<std::size_t>> types;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& t : fraisse::partitions_of(n)) types.push_back(t);
  for (const auto& tx : types) {
    for (const auto& ty : types) {
      const auto p = product(FiniteSystem::from_cycle_type(tx),
                             FiniteSystem::from_cycle_type(ty));
      CHECK(p.system.size() == p.onto_first.source().size());
      CHECK(is_equivariant(p.onto_first));
      CHECK(is_surjective(p.onto_first));
      CHECK(is_equivariant(p.onto_second));
      CHECK(is_surjective(p.onto_second));
    }
  }
}

TEST_CASE("map search counts agree with the cycle-source formula") {
  for (std::size_t m = 1; m <= 8; ++m) {
    const auto source = FiniteSystem::cycle(m);
    for (std::size_t n = 1; n <= 5; ++n) {
      for (const auto& type : fraisse::partitions_of(n)) {
        const auto target = FiniteSystem::from_cycle_type(type);
        const auto maps = find_equivariant_maps(source, target, false,
                                                kNoLimit);
        const std::multiset<std::size_t> lengths(type.begin(), type.end());
        CHECK(maps.size() == oracles::cycle_hom_count(m, lengths));
        for (const auto& f : maps) CHECK(is_equivariant(f));
        // No duplicates.
        std::set<std::vector<State>> distinct;
        for (const auto& f : maps) distinct.insert(f.assignment());
        CHECK(distinct.size() == maps.size());
      }
    }
  }
}

TEST_CASE("surjective search: frozen counts") {
  const auto c6 = FiniteSystem::cycle(6);
  CHECK(find_equivariant_maps(c6, FiniteSystem::cycle(3), true, kNoLimit)
            .size() == 3);
  CHECK(find_equivariant_maps(c6, FiniteSystem::cycle(2), true, kNoLimit)
            .size() == 2);
  CHECK(find_equivariant_maps(c6, FiniteSystem::cycle(4), true, kNoLimit)
            .empty());
  CHECK(find_equivariant_maps(c6, FiniteSystem::identity(2), true, kNoLimit)
            .empty());
  CHECK(find_equivariant_maps(FiniteSystem::from_cycle_type({2, 2}),
                              FiniteSystem::identity(2), true, kNoLimit)
            .size() == 2);
  for (const auto& f :
       find_equivariant_maps(c6, FiniteSystem::cycle(3), true, kNoLimit)) {
    CHECK(is_equivariant(f));
    CHECK(is_surjective(f));
  }
}

TEST_CASE("search returns the lexicographically least map first") {
  const auto first = find_equivariant_maps(FiniteSystem::cycle(4),
                                           FiniteSystem::cycle(2), false, 1);
  REQUIRE(first.size() == 1);
  CHECK(first[0].assignment() == std::vector<State>{0, 1, 0, 1});

  CHECK(find_equivariant_maps(FiniteSystem::cycle(4), FiniteSystem::cycle(2),
                              false, 0)
            .empty());
}

TEST_CASE("allowed lists restrict the search") {
  const auto c4 = FiniteSystem::cycle(4);
  const auto c2 = FiniteSystem::cycle(2);
  MorphismSearchOptions options;
  options.max_results = kNoLimit;
  const std::vector<std::vector<State>> allowed{{1}, {0, 1}, {0, 1}, {0, 1}};
  options.allowed = &allowed;
  const auto maps = find_equivariant_maps(c4, c2, options);
  REQUIRE(maps.size() == 1);
  CHECK(maps[0].assignment() == std::vector<State>{1, 0, 1, 0});

  const std::vector<std::vector<State>> short_allowed{{0}};
  options.allowed = &short_allowed;
  CHECK_THROWS_AS(find_equivariant_maps(c4, c2, options),
                  std::invalid_argument);
}

TEST_CASE("merge classes keep every fiber inside one class") {
  const auto c4 = FiniteSystem::cycle(4);
  const auto c2 = FiniteSystem::cycle(2);
  MorphismSearchOptions options;
  options.max_results = kNoLimit;

  // Both equivariant maps C_4 -> C_2 have fibers {0,2} and {1,3}; classes
  // (0,0,1,1) cut them apart, classes (0,1,0,1) match them exactly.
  const std::vector<int> cutting{0, 0, 1, 1};
  options.merge_classes = &cutting;
  CHECK(find_equivariant_maps(c4, c2, options).empty());

  const std::vector<int> matching{0, 1, 0, 1};
  options.merge_classes = &matching;
  CHECK(find_equivariant_maps(c4, c2, options).size() == 2);

  const std::vector<int> short_classes{0};
  options.merge_classes = &short_classes;
  CHECK_THROWS_AS(find_equivariant_maps(c4, c2, options),
                  std::invalid_argument);
}

}  // TEST_SUITE
