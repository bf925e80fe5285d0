#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantordyn/finite_system.hpp"
#include "cantordyn/morphisms.hpp"
#include "cantordyn/spiral.hpp"
#include "cantordyn/tower.hpp"

namespace cantordyn::fraisse {

/// Joint embedding of two permutation systems: their product with its two
/// projections, both re-verified surjective and equivariant.
struct JointEmbedding {
  FiniteSystem apex;
  EquivariantMap onto_first;
  EquivariantMap onto_second;
};

JointEmbedding joint_embed(const FiniteSystem& x, const FiniteSystem& y);

/// Two permutation systems mapped onto a common base: f from its left
/// system and g from its right system, both surjective and equivariant.
struct AmalgamProblem {
  FiniteSystem base;
  EquivariantMap f;  // left system -> base
  EquivariantMap g;  // right system -> base

  const FiniteSystem& left() const { return f.source(); }
  const FiniteSystem& right() const { return g.source(); }
};

struct AmalgamSolution {
  FiniteSystem apex;
  EquivariantMap onto_left;
  EquivariantMap onto_right;
};

/// Diagnosis of the first violated problem invariant, or absent when the
/// problem is well-formed.
std::optional<std::string> check_problem(const AmalgamProblem& p);

/// Amalgamates over each base cycle separately: with n = the larger of the
/// left and right cycle counts over that base cycle and m = the lcm of all
/// their lengths, the apex gets n cycles of length m; each apex cycle wraps
/// around a left cycle and a right cycle (assigned round-robin in order of
/// minimal state), with the right map anchored at the least state over the
/// left anchor's base image so the square commutes.  Output passes
/// verify_amalgam; apex size is the sum of n * m over base cycles.
AmalgamSolution amalgamate(const AmalgamProblem& p);

/// Exhaustively checks the five solution conditions: onto_left/onto_right
/// equivariant, both surjective, and f o onto_left = g o onto_right, plus
/// endpoint consistency with the problem.
bool verify_amalgam(const AmalgamProblem& p, const AmalgamSolution& s);

/// All partitions of n, parts sorted descending, partitions ordered
/// lexicographically descending: 3 -> {3}, {2,1}, {1,1,1}.
std::vector<std::vector<std::size_t>> partitions_of(std::size_t n);

/// Deterministic chain of permutation systems approximating a system that
/// factors onto every small permutation system.  Starts at the one-state
/// system; step t (1-based) walks every cycle type of size up to
/// size_schedule[min(t-1, end)] in enumeration order and, for each not yet
/// realized as an equivariant-surjective image of the current top, extends
/// the top by amalgamation over the one-state base; a step with nothing
/// pending extends by product with the 2-cycle instead.  Every step grows
/// the top strictly, so the result is a cantor-flagged tower of `depth`
/// levels whose top realizes every scheduled cycle type.
tower::Tower generic_chain(const std::vector<std::size_t>& size_schedule,
                           std::size_t depth,
                           std::size_t max_states = 100000);

/// The two finite-scale halves separating a permutation-level chain from
/// the spiral family: every atom of every chain level is periodic with
/// period dividing the level order (so nothing wanders), while every spiral
/// level up to spiral_depth has wandering points.
struct ChainCertificate {
  bool atoms_periodic = false;
  bool spirals_wander = false;
  std::vector<std::uint64_t> level_orders;      // per chain level
  std::vector<std::uint64_t> max_atom_periods;  // per chain level
  std::vector<std::size_t> wandering_counts;    // per spiral level 1..depth
  std::vector<spiral::Point> wandering_samples;  // one witness per level
};

ChainCertificate certify_chain(const tower::Tower& chain, int spiral_depth,
                               std::size_t max_states = spiral::kDefaultLevelCap);

}  // namespace cantordyn::fraisse
