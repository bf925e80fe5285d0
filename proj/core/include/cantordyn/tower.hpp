#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantordyn/finite_system.hpp"
#include "cantordyn/morphisms.hpp"
#include "cantordyn/odometer.hpp"
#include "cantordyn/spiral.hpp"

namespace cantordyn::tower {

/// A finite stage of an inverse limit: finite systems joined by surjective
/// equivariant bonding maps, bondings[i] mapping levels[i+1] onto levels[i].
/// A tower flagged cantor refines properly at every step (strictly growing
/// level sizes), so its limit has no isolated points.
struct Tower {
  std::vector<FiniteSystem> levels;
  std::vector<EquivariantMap> bondings;
  bool cantor = false;
};

struct ValidationReport {
  bool valid = true;
  std::string message;               // empty when valid
  std::optional<std::size_t> index;  // first failing bonding/level index
};

/// Checks every tower invariant (bonding count, endpoints, equivariance,
/// surjectivity, growth when flagged cantor) and reports the first failure.
ValidationReport validate(const Tower& t);

/// Tower of odometer truncations 1..depth with drop-last-digit bondings.
Tower from_odometer(const odometer::Spec& spec, std::size_t depth,
                    std::uint64_t max_states = odometer::kDefaultTruncationCap);

/// Tower of spiral levels 1..depth with collapse bondings.
Tower from_spirals(int depth, std::size_t max_states = spiral::kDefaultLevelCap);

/// A clopen subset of the limit, named by the least data that defines it: a
/// level index and a nonempty state set at that level (the union of those
/// states' cylinders).  Its bonding-preimage at any deeper level denotes the
/// same clopen set.
struct ClopenSet {
  std::size_t level = 0;
  std::vector<State> states;  // sorted, duplicate-free

  friend bool operator==(const ClopenSet& a, const ClopenSet& b) = default;
};

/// A partition of one level's states into disjoint nonempty blocks.  Block
/// order is significant: cyclically permuted partitions list their blocks in
/// the cyclic order.
struct LevelPartition {
  std::size_t level = 0;
  std::vector<std::vector<State>> blocks;

  friend bool operator==(const LevelPartition& a,
                         const LevelPartition& b) = default;
};

/// The singleton-block partition of a level.
LevelPartition atoms(const Tower& t, std::size_t level);

/// The partition of the map's source into its nonempty fibers, ordered by
/// target state; level names the tower level the source sits at.
LevelPartition fiber_partition(const EquivariantMap& phi, std::size_t level);

/// The composite bonding from levels[from_level] onto levels[to_level]
/// (identity when the levels coincide); requires from_level >= to_level.
EquivariantMap bonding_composite(const Tower& t, std::size_t from_level,
                                 std::size_t to_level);

/// The same clopen set / partition re-expressed at a deeper level as the
/// bonding-preimage; requires to_level >= the input's level.
ClopenSet pull(const Tower& t, const ClopenSet& u, std::size_t to_level);
LevelPartition pull(const Tower& t, const LevelPartition& p,
                    std::size_t to_level);

/// Pushes a clopen set to the least level that defines it: while the state
/// set is a full bonding-preimage, replace it by its image one level down.
ClopenSet canonical(const Tower& t, const ClopenSet& u);

/// Same partition with block contents sorted and blocks ordered by least
/// element, for order-insensitive comparison.
LevelPartition normalized(const LevelPartition& p);

/// True iff, after pulling both partitions to their deeper common level,
/// every block of p lies inside some block of q.
bool refines(const LevelPartition& p, const LevelPartition& q, const Tower& t);

/// Least n >= 1 with sigma^n(U) = U at u's level; always exists there and
/// divides the level's order.  Absent for relation-dynamics levels.
std::optional<std::uint64_t> clopen_period(const Tower& t, const ClopenSet& u);

/// Searches the first `depth` levels for an atom with no dynamics path back
/// to itself and returns that cylinder.  Towers whose levels are all
/// permutations never have one: every clopen set there returns to itself
/// after clopen_period steps.
std::optional<ClopenSet> find_wandering_clopen(const Tower& t,
                                               std::size_t depth);

/// A witness that the tower refines like an odometer: partitions P_1, ...,
/// P_depth, where P_i splits a level into m_i = ratios[0] * ... * ratios[i-1]
/// blocks cyclically permuted by the dynamics and refines the pull of
/// P_{i-1}, with every ratio >= 2.
struct CyclicChain {
  std::vector<std::uint64_t> ratios;
  std::vector<LevelPartition> partitions;
};

/// Bounded search for a CyclicChain of the given depth over a
/// permutation-level tower.  Deterministic: each step takes the shallowest
/// usable level, the least usable ratio there, and the block phases anchored
/// at each cycle's minimal state; a cyclic m-partition of a level exists iff
/// m divides every cycle length, so absence at every level bound is exact
/// for this tower depth, not a timeout.
std::optional<CyclicChain> cyclic_refinement_chain(const Tower& t,
                                                   std::size_t depth);

enum class LiftStatus { found, absent_within_bounds, precondition_failed };

struct LiftWitness {
  std::size_t k = 0;            // psi's target is spiral level n + k
  std::size_t tower_level = 0;  // psi's source is this tower level
  EquivariantMap psi;
};

/// Three-valued outcome: a witness, a certificate that the bounded search
/// space holds none (not a refutation of unbounded liftability), or a
/// diagnosis of why the query was malformed.
struct LiftResult {
  LiftStatus status = LiftStatus::precondition_failed;
  std::optional<LiftWitness> witness;
  std::string message;  // empty when found
};

/// The bounded lifting game.  Given phi mapping tower level phi_level onto
/// spiral level W_n (surjective, equivariant) and a partition `refinement`
/// of that tower level refining phi's fiber partition, searches k = 1..max_k
/// and tower levels phi_level..max_level for a surjective equivariant psi
/// from the tower level onto W_{n+k} such that
///   - collapse(n+k -> n) o psi = phi o (bonding composite), and
///   - psi's fiber partition refines the pull of `refinement`.
/// Search order: increasing k, then increasing tower level, then
/// lexicographically least psi.  A found witness is re-verified against all
/// three conditions before being returned.
LiftResult find_lift(const Tower& t, std::size_t phi_level, int spiral_n,
                     const EquivariantMap& phi,
                     const LevelPartition& refinement, std::size_t max_k,
                     std::size_t max_level,
                     std::size_t spiral_cap = spiral::kDefaultLevelCap);

}  // namespace cantordyn::tower
