#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cantordyn/errors.hpp"
#include "cantordyn/odometer.hpp"
#include "cantordyn/spiral.hpp"
#include "cantordyn/tower.hpp"
#include "oracles.hpp"

using namespace cantordyn;
using odometer::Spec;
using tower::ClopenSet;
using tower::LevelPartition;
using tower::Tower;

namespace {

Tower two_level_tower(FiniteSystem lower, FiniteSystem upper,
                      std::vector<State> assignment) {
  Tower t;
  EquivariantMap pi(upper, lower, std::move(assignment));
  t.levels.push_back(std::move(lower));
  t.levels.push_back(std::move(upper));
  t.bondings.push_back(std::move(pi));
  return t;
}

/// C_2 below C_6, bonded by reduction mod 2.
Tower c2_c6_tower() {
  return two_level_tower(FiniteSystem::cycle(2), FiniteSystem::cycle(6),
                         {0, 1, 0, 1, 0, 1});
}

bool blocks_cycled(const FiniteSystem& sys,
                   const std::vector<std::vector<State>>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& next = blocks[(i + 1) % blocks.size()];
    for (State s : blocks[i])
      if (!std::binary_search(next.begin(), next.end(), sys.successor(s)))
        return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("tower") {

TEST_CASE("validate accepts the built-in towers") {
  const Tower odo = tower::from_odometer(Spec::parse("2,3"), 4);
  CHECK(odo.levels.size() == 4);
  CHECK(odo.levels[3].size() == 36);
  CHECK(odo.cantor);
  CHECK(tower::validate(odo).valid);

  const Tower spirals = tower::from_spirals(2);
  CHECK(spirals.levels.size() == 2);
  CHECK(spirals.levels[0].size() == 18);
  CHECK(spirals.levels[1].size() == 252);
  CHECK(spirals.cantor);
  CHECK(tower::validate(spirals).valid);
}

TEST_CASE("validate rejects each broken invariant") {
  CHECK_FALSE(tower::validate(Tower{}).valid);  // no levels

  Tower wrong_count = c2_c6_tower();
  wrong_count.levels.push_back(FiniteSystem::cycle(12));
  const auto count_report = tower::validate(wrong_count);
  CHECK_FALSE(count_report.valid);

  // Bonding endpoints must match the adjacent levels.
  Tower endpoints = c2_c6_tower();
  endpoints.levels[0] = FiniteSystem::cycle(3);
  const auto endpoint_report = tower::validate(endpoints);
  CHECK_FALSE(endpoint_report.valid);
  CHECK(endpoint_report.index == 0);

  // Not equivariant: shift one target.
  Tower skewed = two_level_tower(FiniteSystem::cycle(2),
                                 FiniteSystem::cycle(6),
                                 {0, 1, 0, 1, 1, 0});
  CHECK_FALSE(tower::validate(skewed).valid);

  // Not surjective.
  Tower collapsed = two_level_tower(FiniteSystem::identity(2),
                                    FiniteSystem::identity(4),
                                    {0, 0, 0, 0});
  CHECK_FALSE(tower::validate(collapsed).valid);

  // The cantor flag demands strict growth.
  Tower flat = two_level_tower(FiniteSystem::cycle(2),
                               FiniteSystem::cycle(2), {0, 1});
  CHECK(tower::validate(flat).valid);
  flat.cantor = true;
  CHECK_FALSE(tower::validate(flat).valid);
}

TEST_CASE("atoms, fibers and pulls") {
  const Tower t = c2_c6_tower();
  const LevelPartition singletons = tower::atoms(t, 0);
  CHECK(singletons.level == 0);
  CHECK(singletons.blocks ==
        std::vector<std::vector<State>>{{0}, {1}});

  const LevelPartition fibers = tower::fiber_partition(t.bondings[0], 1);
  CHECK(fibers.level == 1);
  CHECK(fibers.blocks ==
        std::vector<std::vector<State>>{{0, 2, 4}, {1, 3, 5}});

  const ClopenSet even{0, {0}};
  const ClopenSet pulled = tower::pull(t, even, 1);
  CHECK(pulled.level == 1);
  CHECK(pulled.states == std::vector<State>{0, 2, 4});
  CHECK(tower::pull(t, even, 0) == even);
  CHECK_THROWS_AS(tower::pull(t, ClopenSet{1, {0}}, 0),
                  std::invalid_argument);

  const LevelPartition pulled_atoms = tower::pull(t, singletons, 1);
  CHECK(pulled_atoms == fibers);

  const auto composite = tower::bonding_composite(t, 1, 0);
  CHECK(composite.assignment() == t.bondings[0].assignment());
  CHECK(tower::bonding_composite(t, 1, 1).assignment() ==
        std::vector<State>{0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(tower::bonding_composite(t, 0, 1), std::invalid_argument);
}

TEST_CASE("canonical pushes clopen sets to their least level") {
  const Tower t = tower::from_odometer(Spec::parse(":2"), 3);
  // The full preimage of level-0 state 0, expressed wastefully at level 2.
  const ClopenSet wasteful{2, {0, 2, 4, 6}};
  const ClopenSet least = tower::canonical(t, wasteful);
  CHECK(least == ClopenSet{0, {0}});

  // A genuine level-2 set stays put.
  const ClopenSet strict{2, {0, 1}};
  CHECK(tower::canonical(t, strict) == strict);
  // Pull-then-canonicalize is the identity on canonical sets.
  CHECK(tower::canonical(t, tower::pull(t, least, 2)) == least);
}

TEST_CASE("normalized and refines") {
  const Tower t = c2_c6_tower();
  const LevelPartition scrambled{1, {{5, 1, 3}, {4, 0, 2}}};
  const LevelPartition tidy = tower::normalized(scrambled);
  CHECK(tidy.blocks ==
        std::vector<std::vector<State>>{{0, 2, 4}, {1, 3, 5}});

  const LevelPartition fibers = tower::fiber_partition(t.bondings[0], 1);
  const LevelPartition atoms1 = tower::atoms(t, 1);
  CHECK(tower::refines(atoms1, fibers, t));
  CHECK_FALSE(tower::refines(fibers, atoms1, t));
  // Across levels: level-0 atoms pull to the fibers, which atoms refine.
  CHECK(tower::refines(atoms1, tower::atoms(t, 0), t));
  CHECK(tower::refines(fibers, fibers, t));
}

TEST_CASE("clopen periods: frozen examples") {
  const Tower t = tower::from_odometer(Spec::parse(":2"), 3);
  // Level sizes 2, 4, 8.
  CHECK(tower::clopen_period(t, ClopenSet{2, {0, 2, 4, 6}}) == 2);
  CHECK(tower::clopen_period(t, ClopenSet{2, {0}}) == 8);
  CHECK(tower::clopen_period(t, ClopenSet{2, {0, 1, 2, 3, 4, 5, 6, 7}}) == 1);
  CHECK(tower::clopen_period(t, ClopenSet{1, {0, 2}}) == 2);

  const Tower mixed = two_level_tower(FiniteSystem::cycle(2),
                                      FiniteSystem::from_cycle_type({2, 6}),
                                      {0, 1, 0, 1, 0, 1, 0, 1});
  // Pattern 10 on the 2-cycle has period 2; pattern 100100 on the 6-cycle
  // has period 3; together lcm(2, 3) = 6.  Dropping state 0 leaves the
  // 2-cycle untouched (period 1), so only the 6-cycle contributes.
  CHECK(tower::clopen_period(mixed, ClopenSet{1, {0, 2, 5}}) == 6);
  CHECK(tower::clopen_period(mixed, ClopenSet{1, {2, 5}}) == 3);
  CHECK(tower::clopen_period(mixed, ClopenSet{1, {0, 1}}) == 1);

  // Period always divides the level order.
  const auto dec = cycle_decomposition(mixed.levels[1]);
  for (State s = 0; s < 8; ++s) {
    const auto period = tower::clopen_period(mixed, ClopenSet{1, {s}});
    REQUIRE(period.has_value());
    CHECK(dec.order % *period == 0);
  }

  // Relation-dynamics levels have no period.
  const Tower spirals = tower::from_spirals(1);
  CHECK_FALSE(tower::clopen_period(spirals, ClopenSet{0, {0}}).has_value());

  CHECK_THROWS_AS(tower::clopen_period(t, ClopenSet{3, {0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tower::clopen_period(t, ClopenSet{0, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tower::clopen_period(t, ClopenSet{0, {1, 0}}),
                  std::invalid_argument);  // must be sorted
}

TEST_CASE("wandering clopen sets exist only past relation levels") {
  CHECK_FALSE(tower::find_wandering_clopen(
                  tower::from_odometer(Spec::parse("2,3"), 4), 4)
                  .has_value());

  const Tower spirals = tower::from_spirals(2);
  const auto witness = tower::find_wandering_clopen(spirals, 2);
  REQUIRE(witness.has_value());
  CHECK(witness->level == 0);
  CHECK(witness->states.size() == 1);
  // The witness is a chain point: verify through the level coordinates.
  const spiral::Level level1(1);
  CHECK(level1.point_of(witness->states[0]).side == spiral::Side::middle);
  CHECK(witness->states[0] == 1);  // least chain state: (a|m|0)

  // Depth 0 searches nothing.
  CHECK_FALSE(tower::find_wandering_clopen(spirals, 0).has_value());
}

TEST_CASE("cyclic refinement chains: frozen towers") {
  const Tower halving = tower::from_odometer(Spec::parse(":2"), 3);
  const auto chain = tower::cyclic_refinement_chain(halving, 3);
  REQUIRE(chain.has_value());
  CHECK(chain->ratios == std::vector<std::uint64_t>{2, 2, 2});
  REQUIRE(chain->partitions.size() == 3);
  std::uint64_t blocks = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    blocks *= chain->ratios[i];
    const auto& p = chain->partitions[i];
    CHECK(p.blocks.size() == blocks);
    // m_i divides the size of the level carrying P_i.
    CHECK(halving.levels[p.level].size() % blocks == 0);
    CHECK(blocks_cycled(halving.levels[p.level], p.blocks));
    if (i > 0) CHECK(tower::refines(p, chain->partitions[i - 1], halving));
  }
  CHECK_FALSE(tower::cyclic_refinement_chain(halving, 4).has_value());

  const Tower alternating = tower::from_odometer(Spec::parse("2,3"), 4);
  const auto alt = tower::cyclic_refinement_chain(alternating, 3);
  REQUIRE(alt.has_value());
  CHECK(alt->ratios == std::vector<std::uint64_t>{2, 3, 2});

  // Tie-break: the shallowest usable level and its least prime ratio win.
  const auto two = tower::cyclic_refinement_chain(c2_c6_tower(), 2);
  REQUIRE(two.has_value());
  CHECK(two->ratios == std::vector<std::uint64_t>{2, 3});
  CHECK(two->partitions[0].level == 0);
  CHECK(two->partitions[0].blocks ==
        std::vector<std::vector<State>>{{0}, {1}});
  CHECK(two->partitions[1].level == 1);
  CHECK(two->partitions[1].blocks.size() == 6);

  CHECK_THROWS_AS(tower::cyclic_refinement_chain(tower::from_spirals(1), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(tower::cyclic_refinement_chain(c2_c6_tower(), 0),
                  std::invalid_argument);
}

TEST_CASE("find_lift: the identity query lifts to the identity") {
  const Tower t = tower::from_spirals(2);
  const auto id = identity_map(t.levels[0]);
  const auto result = tower::find_lift(t, 0, 1, id, tower::atoms(t, 0), 1, 1);
  REQUIRE(result.status == tower::LiftStatus::found);
  REQUIRE(result.witness.has_value());
  CHECK(result.witness->k == 1);
  CHECK(result.witness->tower_level == 1);
  std::vector<State> iota(252);
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(result.witness->psi.assignment() == iota);

  // Independent re-verification of the three lift conditions.
  const auto& psi = result.witness->psi;
  CHECK(is_equivariant(psi));
  CHECK(is_surjective(psi));
  const auto xi = spiral::collapse_map(spiral::Level(2), spiral::Level(1));
  for (State s = 0; s < 252; ++s)
    CHECK(xi(psi(s)) == id(t.bondings[0](s)));
}

TEST_CASE("find_lift: absence within bounds is reported, not thrown") {
  const Tower t = tower::from_spirals(2);
  const auto id = identity_map(t.levels[0]);

  // Hosting level capped at 0: psi would need 252 targets from 18 states.
  const auto squeezed =
      tower::find_lift(t, 0, 1, id, tower::atoms(t, 0), 1, 0);
  CHECK(squeezed.status == tower::LiftStatus::absent_within_bounds);
  CHECK_FALSE(squeezed.message.empty());

  // Spiral cap too small to build the next level: counts as absence with a
  // cap diagnosis.
  const auto capped =
      tower::find_lift(t, 0, 1, id, tower::atoms(t, 0), 1, 1, 100);
  CHECK(capped.status == tower::LiftStatus::absent_within_bounds);
  CHECK(capped.message.find("cap") != std::string::npos);
}

TEST_CASE("find_lift: precondition violations are diagnosed") {
  const Tower t = tower::from_spirals(2);
  const auto id = identity_map(t.levels[0]);
  const auto atoms0 = tower::atoms(t, 0);

  const auto bad_level = tower::find_lift(t, 2, 1, id, atoms0, 1, 1);
  CHECK(bad_level.status == tower::LiftStatus::precondition_failed);

  const auto bad_n = tower::find_lift(t, 0, 0, id, atoms0, 1, 1);
  CHECK(bad_n.status == tower::LiftStatus::precondition_failed);

  // phi must be onto the spiral level: a constant map is not.
  const spiral::Level base(1);
  const EquivariantMap constant(t.levels[0], base.system(),
                                std::vector<State>(18, 0));
  const auto not_onto =
      tower::find_lift(t, 0, 1, constant, atoms0, 1, 1);
  CHECK(not_onto.status == tower::LiftStatus::precondition_failed);

  // phi must be equivariant: reverse the identity on the left cycle only.
  std::vector<State> swapped(18);
  std::iota(swapped.begin(), swapped.end(), 0);
  std::swap(swapped[0], swapped[2]);
  const EquivariantMap skew(t.levels[0], base.system(), swapped);
  const auto not_equivariant =
      tower::find_lift(t, 0, 1, skew, atoms0, 1, 1);
  CHECK(not_equivariant.status == tower::LiftStatus::precondition_failed);

  // The refinement must live at phi's level and refine phi's fibers.
  const auto wrong_level =
      tower::find_lift(t, 0, 1, id, tower::atoms(t, 1), 1, 1);
  CHECK(wrong_level.status == tower::LiftStatus::precondition_failed);

  const LevelPartition lumped{0, {{0, 1, 2, 3, 4, 5, 6, 7, 8},
                                  {9, 10, 11, 12, 13, 14, 15, 16, 17}}};
  const auto too_coarse = tower::find_lift(t, 0, 1, id, lumped, 1, 1);
  CHECK(too_coarse.status == tower::LiftStatus::precondition_failed);

  const LevelPartition torn{0, {{0}, {2}}};
  const auto not_partition = tower::find_lift(t, 0, 1, id, torn, 1, 1);
  CHECK(not_partition.status == tower::LiftStatus::precondition_failed);

  for (const auto* r : {&bad_level, &bad_n, &not_onto, &not_equivariant,
                        &wrong_level, &too_coarse, &not_partition}) {
    CHECK_FALSE(r->message.empty());
    CHECK_FALSE(r->witness.has_value());
  }
}

TEST_CASE("find_lift: a coarser valid refinement still lifts") {
  // With phi = the collapse bonding itself (level 1 onto spiral level 1)
  // and the fiber partition as refinement, the identity at level 1 is a
  // lift: its fibers are singletons, which refine anything.
  const Tower t = tower::from_spirals(2);
  const auto phi = t.bondings[0];  // level 1 -> level 0 = W_1
  const auto fibers = tower::fiber_partition(phi, 1);
  const auto result = tower::find_lift(t, 1, 1, phi, fibers, 1, 1);
  REQUIRE(result.status == tower::LiftStatus::found);
  CHECK(result.witness->tower_level == 1);
  CHECK(result.witness->k == 1);
  CHECK(is_surjective(result.witness->psi));
  const auto xi = spiral::collapse_map(spiral::Level(2), spiral::Level(1));
  for (State s = 0; s < 252; ++s)
    CHECK(xi(result.witness->psi(s)) == phi(s));
}

}  // TEST_SUITE
