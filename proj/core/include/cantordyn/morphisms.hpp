#pragma once

#include <limits>
#include <vector>

#include "cantordyn/finite_system.hpp"

namespace cantordyn {

/// A total map between finite systems.  Equivariance and surjectivity are
/// checkable properties of a value, not construction invariants, so invalid
/// candidates can be represented and diagnosed.
class EquivariantMap {
 public:
  EquivariantMap(FiniteSystem source, FiniteSystem target,
                 std::vector<State> assignment);

  const FiniteSystem& source() const { return source_; }
  const FiniteSystem& target() const { return target_; }
  const std::vector<State>& assignment() const { return assignment_; }
  State operator()(State s) const;

  friend bool operator==(const EquivariantMap& a, const EquivariantMap& b);

 private:
  FiniteSystem source_;
  FiniteSystem target_;
  std::vector<State> assignment_;
};

/// True iff every source arrow (x, y) maps to a target arrow (f(x), f(y)).
/// For a permutation target this is f(sigma(x)) = tau(f(x)).
bool is_equivariant(const EquivariantMap& f);
bool is_surjective(const EquivariantMap& f);

EquivariantMap identity_map(const FiniteSystem& sys);

/// outer after inner; requires inner's target and outer's source to have the
/// same dynamics.
EquivariantMap compose(const EquivariantMap& outer, const EquivariantMap& inner);

struct Product {
  FiniteSystem system;
  EquivariantMap onto_first;
  EquivariantMap onto_second;
};

/// Cartesian product of two permutation systems with coordinatewise
/// dynamics.  State (i, j) has index i * |y| + j; both projections are
/// surjective and equivariant.
Product product(const FiniteSystem& x, const FiniteSystem& y);

inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

struct MorphismSearchOptions {
  bool require_surjective = false;
  std::size_t max_results = kNoLimit;
  /// When set: candidate target states per source state, each list sorted
  /// ascending.  Borrowed for the duration of the call.
  const std::vector<std::vector<State>>* allowed = nullptr;
  /// When set (one class id per source state): two states may share an image
  /// only if they share a class.  Borrowed for the duration of the call.
  const std::vector<int>* merge_classes = nullptr;
};

/// Backtracking enumeration of equivariant maps in lexicographic order of
/// the assignment vector (state-index order).  When fewer than max_results
/// maps are returned the search was exhaustive.
std::vector<EquivariantMap> find_equivariant_maps(
    const FiniteSystem& source, const FiniteSystem& target,
    const MorphismSearchOptions& options);
std::vector<EquivariantMap> find_equivariant_maps(
    const FiniteSystem& source, const FiniteSystem& target,
    bool require_surjective = false, std::size_t max_results = kNoLimit);

}  // namespace cantordyn
