#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cantordyn/finite_system.hpp"
#include "cantordyn/morphisms.hpp"

namespace cantordyn::spiral {

/// An n-spiral is a relation system made of two cycles of length n! (the
/// left and right sides) joined by a directed chain of 2n-1 points (the
/// middle side, indices -n+1..n-1):
///
///   left cycle: (l,k) -> (l,k+1 mod n!)        entry:  (l,0)   -> (m,-n+1)
///   chain:      (m,k) -> (m,k+1)               exit:   (m,n-1) -> (r,0)
///   right cycle:(r,k) -> (r,k+1 mod n!)
///
/// (l,0) is the unique branch point with two successors.  Level n is the
/// disjoint union of 6^n spirals, one per word of length n over the
/// six-letter alphabet below; collapse maps a level-(n+1) point down to
/// level n by dropping the last letter of its word, which selects how the
/// spiral folds: letters a,b collapse everything onto the left cycle,
/// letters c,d project straight down (chain endpoints fold into the
/// cycles), letters e,f collapse everything onto the right cycle.
inline constexpr std::string_view kAlphabet = "abcdef";

enum class Side : char { left = 'l', middle = 'm', right = 'r' };

enum class Family { left, middle, right };

Family family_of(char letter);

struct Point {
  std::string word;  // one alphabet letter per level
  Side side = Side::left;
  std::int64_t index = 0;

  int level() const { return static_cast<int>(word.size()); }
  friend bool operator==(const Point& a, const Point& b) = default;
  friend auto operator<=>(const Point& a, const Point& b) = default;
};

std::string to_string(const Point& p);  // "(word|side|index)"

bool valid_point(const Point& p);

inline constexpr std::size_t kDefaultLevelCap = 100000;

/// Number of states of level n: 6^n * (2*n! + 2n - 1).
std::size_t level_state_count(int n);
std::size_t spiral_state_count(int n);  // 2*n! + 2n - 1

/// One spiral as a standalone relation system (states ordered left cycle,
/// then chain, then right cycle).
FiniteSystem single_spiral(int n, std::size_t max_states = kDefaultLevelCap);

/// Level n: 6^n disjoint spirals, spirals ordered lexicographically by
/// word, states within a spiral ordered left cycle, chain, right cycle.
class Level {
 public:
  explicit Level(int n, std::size_t max_states = kDefaultLevelCap);

  int level() const { return n_; }
  const FiniteSystem& system() const { return system_; }

  State state_of(const Point& p) const;
  Point point_of(State s) const;
  std::vector<State> middle_states() const;  // sorted

 private:
  int n_;
  std::int64_t spiral_size_;
  std::int64_t factorial_;
  FiniteSystem system_;
};

/// One collapse step: level n+1 point down to level n.  Pure coordinate
/// arithmetic; works at any level without building the systems.
Point collapse(const Point& p);
/// Iterated collapse down to target_level >= 1.
Point collapse(const Point& p, int target_level);

/// The collapse step as a map between built levels (upper.level() may
/// exceed lower.level() + 1; steps are composed).
EquivariantMap collapse_map(const Level& upper, const Level& lower);

/// True iff every arrow of the upper level maps to an arrow of the lower
/// system under collapse.  The override flavor exists so corrupted lower
/// systems can be probed.
bool collapse_preserves_relation(const Level& upper, const Level& lower);
bool collapse_preserves_relation(const Level& upper, const Level& lower,
                                 const FiniteSystem& lower_system);
bool collapse_preserves_relation(int n, std::size_t max_states = kDefaultLevelCap);

/// Points with no relation path back to themselves: exactly the chain
/// (middle-side) points of the level.
std::vector<Point> wandering_points(const Level& level);

}  // namespace cantordyn::spiral
