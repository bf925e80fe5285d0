#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cantordyn {

using State = int;

enum class DynamicsKind { permutation, relation };

/// A nonempty finite state set with dynamics: either a permutation (every
/// state has exactly one successor and exactly one predecessor) or a total
/// successor relation (every state has at least one successor).  States are
/// dense indices 0..size()-1; labels are optional metadata and never affect
/// semantics.  Instances are immutable after construction.
class FiniteSystem {
 public:
  static FiniteSystem permutation(std::vector<State> successor,
                                  std::vector<std::string> labels = {});
  static FiniteSystem relation(std::size_t n_states,
                               std::vector<std::pair<State, State>> arrows,
                               std::vector<std::string> labels = {});
  static FiniteSystem cycle(std::size_t n);     // 0 -> 1 -> ... -> n-1 -> 0
  static FiniteSystem identity(std::size_t n);  // n fixed points
  /// Canonical permutation with the given cycle lengths, laid out
  /// consecutively: states 0..k-1, one cycle after another.
  static FiniteSystem from_cycle_type(const std::vector<std::size_t>& lengths);

  std::size_t size() const { return adjacency_.size(); }
  DynamicsKind kind() const { return kind_; }
  bool is_permutation() const { return kind_ == DynamicsKind::permutation; }

  State successor(State s) const;  // permutation systems only
  const std::vector<State>& successors(State s) const;
  bool has_arrow(State from, State to) const;
  std::vector<std::pair<State, State>> arrows() const;  // sorted
  std::size_t arrow_count() const;

  std::string label(State s) const;  // stored label, or the decimal index
  bool has_labels() const { return !labels_.empty(); }

  /// Dynamics and per-state labels equal (unlabeled states compare as their
  /// decimal index).
  friend bool operator==(const FiniteSystem& a, const FiniteSystem& b);

 private:
  FiniteSystem(DynamicsKind kind, std::vector<std::vector<State>> adjacency,
               std::vector<std::string> labels);
  void check_state(State s) const;

  DynamicsKind kind_;
  std::vector<std::vector<State>> adjacency_;  // sorted successor lists
  std::vector<std::string> labels_;            // empty, or one per state
};

/// Equality of state count, kind and arrows; ignores labels.
bool same_dynamics(const FiniteSystem& a, const FiniteSystem& b);

/// Disjoint cycles of a permutation system.  Each cycle starts at its
/// minimal state and cycles are ordered by that minimum.  order is the lcm
/// of the lengths: the least e >= 1 with sigma^e = id.
struct CycleDecomposition {
  std::vector<std::vector<State>> cycles;
  std::vector<std::size_t> lengths;
  std::uint64_t order = 1;
};

CycleDecomposition cycle_decomposition(const FiniteSystem& sys);

/// Partition of the states into k nonempty blocks B_0..B_{k-1} with
/// sigma(B_i) = B_{i+1 mod k}, if one exists; it does iff k divides every
/// cycle length.  Block contents are sorted; the block order is the cyclic
/// order.  Permutation systems only.
std::optional<std::vector<std::vector<State>>> cyclic_partition(
    const FiniteSystem& sys, std::uint64_t k);

/// States through which no directed dynamics cycle passes (no path of
/// length >= 1 from the state back to itself).  Sorted.
std::vector<State> wandering_states(const FiniteSystem& sys);

/// lcm that throws std::overflow_error instead of wrapping.
std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);

}  // namespace cantordyn
