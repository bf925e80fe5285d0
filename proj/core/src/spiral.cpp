#include "cantordyn/spiral.hpp"

#include <algorithm>
#include <stdexcept>

#include "cantordyn/errors.hpp"

namespace cantordyn::spiral {

namespace {

std::int64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("factorial: out of range");
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int letter_rank(char letter) {
  const auto pos = kAlphabet.find(letter);
  if (pos == std::string_view::npos)
    throw std::invalid_argument("spiral word: letter outside alphabet");
  return static_cast<int>(pos);
}

void check_level(int n) {
  if (n < 1) throw std::invalid_argument("spiral level must be >= 1");
  if (n > 15) throw resource_limit_error("spiral level too deep");
}

}  // namespace

Family family_of(char letter) {
  switch (letter_rank(letter) / 2) {
    case 0: return Family::left;
    case 1: return Family::middle;
    default: return Family::right;
  }
}

std::string to_string(const Point& p) {
  return "(" + p.word + "|" + std::string(1, static_cast<char>(p.side)) + "|" +
         std::to_string(p.index) + ")";
}

bool valid_point(const Point& p) {
  const int n = p.level();
  if (n < 1 || n > 15) return false;
  for (char c : p.word)
    if (kAlphabet.find(c) == std::string_view::npos) return false;
  switch (p.side) {
    case Side::left:
    case Side::right:
      return p.index >= 0 && p.index < factorial(n);
    case Side::middle:
      return p.index >= -(n - 1) && p.index <= n - 1;
  }
  return false;
}

std::size_t spiral_state_count(int n) {
  check_level(n);
  return static_cast<std::size_t>(2 * factorial(n) + 2 * n - 1);
}

std::size_t level_state_count(int n) {
  check_level(n);
  std::size_t count = spiral_state_count(n);
  for (int i = 0; i < n; ++i) {
    if (count > kDefaultLevelCap * 1000)
      throw resource_limit_error("spiral level " + std::to_string(n) +
                                 ": state count exceeds the supported range");
    count *= 6;
  }
  return count;
}

namespace {

// Arrows of one spiral, with states numbered base..base+size-1 in the order
// left cycle (n! states), chain (2n-1 states), right cycle (n! states).
void append_spiral_arrows(int n, State base,
                          std::vector<std::pair<State, State>>& arrows) {
  const std::int64_t f = factorial(n);
  const State l0 = base;
  const State m0 = base + static_cast<State>(f);          // chain index -n+1
  const State r0 = m0 + static_cast<State>(2 * n - 1);
  for (std::int64_t k = 0; k < f; ++k) {
    arrows.emplace_back(l0 + static_cast<State>(k),
                        l0 + static_cast<State>((k + 1) % f));
    arrows.emplace_back(r0 + static_cast<State>(k),
                        r0 + static_cast<State>((k + 1) % f));
  }
  for (int k = 0; k < 2 * n - 2; ++k)
    arrows.emplace_back(m0 + k, m0 + k + 1);
  arrows.emplace_back(l0, m0);                    // (l,0) -> (m,-n+1)
  arrows.emplace_back(m0 + 2 * n - 2, r0);        // (m,n-1) -> (r,0)
}

void append_spiral_labels(int n, const std::string& word,
                          std::vector<std::string>& labels) {
  const std::int64_t f = factorial(n);
  for (std::int64_t k = 0; k < f; ++k)
    labels.push_back(to_string(Point{word, Side::left, k}));
  for (int k = -(n - 1); k <= n - 1; ++k)
    labels.push_back(to_string(Point{word, Side::middle, k}));
  for (std::int64_t k = 0; k < f; ++k)
    labels.push_back(to_string(Point{word, Side::right, k}));
}

}  // namespace

FiniteSystem single_spiral(int n, std::size_t max_states) {
  check_level(n);
  const std::size_t size = spiral_state_count(n);
  if (size > max_states)
    throw resource_limit_error("single_spiral: " + std::to_string(size) +
                               " states exceeds cap " +
                               std::to_string(max_states));
  std::vector<std::pair<State, State>> arrows;
  append_spiral_arrows(n, 0, arrows);
  return FiniteSystem::relation(size, std::move(arrows));
}

namespace {

FiniteSystem build_level_system(int n, std::size_t max_states) {
  check_level(n);
  const std::size_t total = level_state_count(n);
  if (total > max_states)
    throw resource_limit_error("spiral level " + std::to_string(n) + ": " +
                               std::to_string(total) + " states exceeds cap " +
                               std::to_string(max_states));
  const std::size_t per_spiral = spiral_state_count(n);
  const std::size_t words = total / per_spiral;
  std::vector<std::pair<State, State>> arrows;
  arrows.reserve(total + words);
  std::vector<std::string> labels;
  labels.reserve(total);
  std::string word(static_cast<std::size_t>(n), kAlphabet[0]);
  for (std::size_t rank = 0; rank < words; ++rank) {
    std::size_t r = rank;
    for (int pos = n - 1; pos >= 0; --pos) {
      word[pos] = kAlphabet[r % 6];
      r /= 6;
    }
    append_spiral_arrows(n, static_cast<State>(rank * per_spiral), arrows);
    append_spiral_labels(n, word, labels);
  }
  return FiniteSystem::relation(total, std::move(arrows), std::move(labels));
}

}  // namespace

Level::Level(int n, std::size_t max_states)
    : n_(n),
      spiral_size_(0),
      factorial_(0),
      system_(build_level_system(n, max_states)) {
  spiral_size_ = static_cast<std::int64_t>(spiral_state_count(n));
  factorial_ = factorial(n);
}

State Level::state_of(const Point& p) const {
  if (p.level() != n_ || !valid_point(p))
    throw std::invalid_argument("state_of: not a level-" + std::to_string(n_) +
                                " point");
  std::int64_t rank = 0;
  for (char c : p.word) rank = rank * 6 + letter_rank(c);
  std::int64_t offset = 0;
  switch (p.side) {
    case Side::left: offset = p.index; break;
    case Side::middle: offset = factorial_ + (p.index + n_ - 1); break;
    case Side::right: offset = factorial_ + 2 * n_ - 1 + p.index; break;
  }
  return static_cast<State>(rank * spiral_size_ + offset);
}

Point Level::point_of(State s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= system_.size())
    throw std::invalid_argument("point_of: state out of range");
  std::int64_t rank = s / spiral_size_;
  std::int64_t offset = s % spiral_size_;
  std::string word(static_cast<std::size_t>(n_), kAlphabet[0]);
  for (int pos = n_ - 1; pos >= 0; --pos) {
    word[pos] = kAlphabet[rank % 6];
    rank /= 6;
  }
  Point p{std::move(word), Side::left, 0};
  if (offset < factorial_) {
    p.side = Side::left;
    p.index = offset;
  } else if (offset < factorial_ + 2 * n_ - 1) {
    p.side = Side::middle;
    p.index = offset - factorial_ - (n_ - 1);
  } else {
    p.side = Side::right;
    p.index = offset - factorial_ - (2 * n_ - 1);
  }
  return p;
}

std::vector<State> Level::middle_states() const {
  std::vector<State> out;
  const std::int64_t spirals = static_cast<std::int64_t>(system_.size()) /
                               spiral_size_;
  for (std::int64_t rank = 0; rank < spirals; ++rank)
    for (std::int64_t k = 0; k < 2 * n_ - 1; ++k)
      out.push_back(static_cast<State>(rank * spiral_size_ + factorial_ + k));
  return out;
}

Point collapse(const Point& p) {
  if (!valid_point(p)) throw std::invalid_argument("collapse: invalid point");
  const int src = p.level();
  if (src < 2) throw std::invalid_argument("collapse: already at level 1");
  const int n = src - 1;
  const std::int64_t f = factorial(n);
  std::string prefix = p.word.substr(0, static_cast<std::size_t>(n));
  const std::int64_t k = p.index;
  // The offsets below are forced by the seam arrows (l,0) -> (m,-n) and
  // (m,n) -> (r,0): they make every upper arrow land on a lower arrow, and
  // they vanish at n = 1 (all indices reduce mod 1).
  switch (family_of(p.word.back())) {
    case Family::left:
      // Everything winds onto the left cycle by walk distance from (l,0).
      switch (p.side) {
        case Side::left: return {std::move(prefix), Side::left, floor_mod(k, f)};
        case Side::middle:
          return {std::move(prefix), Side::left, floor_mod(k + n + 1, f)};
        case Side::right:
          return {std::move(prefix), Side::left, floor_mod(k + 2 * n + 2, f)};
      }
      break;
    case Family::right:
      // Mirror image: everything winds onto the right cycle.
      switch (p.side) {
        case Side::left:
          return {std::move(prefix), Side::right, floor_mod(k - 2 * n - 2, f)};
        case Side::middle:
          return {std::move(prefix), Side::right, floor_mod(k - n - 1, f)};
        case Side::right:
          return {std::move(prefix), Side::right, floor_mod(k, f)};
      }
      break;
    case Family::middle:
      // Straight down: the chain shortens by one point at each end, the
      // extreme chain points fold into the cycles.
      switch (p.side) {
        case Side::left:
          return {std::move(prefix), Side::left, floor_mod(k - 1, f)};
        case Side::middle:
          if (k == -n) return {std::move(prefix), Side::left, 0};
          if (k == n) return {std::move(prefix), Side::right, 0};
          return {std::move(prefix), Side::middle, k};
        case Side::right:
          return {std::move(prefix), Side::right, floor_mod(k + 1, f)};
      }
      break;
  }
  throw std::logic_error("collapse: unreachable");
}

Point collapse(const Point& p, int target_level) {
  if (target_level < 1 || target_level > p.level())
    throw std::invalid_argument("collapse: bad target level");
  Point q = p;
  while (q.level() > target_level) q = collapse(q);
  return q;
}

EquivariantMap collapse_map(const Level& upper, const Level& lower) {
  if (upper.level() <= lower.level())
    throw std::invalid_argument("collapse_map: upper level must be deeper");
  std::vector<State> assignment(upper.system().size());
  for (std::size_t s = 0; s < assignment.size(); ++s)
    assignment[s] = lower.state_of(
        collapse(upper.point_of(static_cast<State>(s)), lower.level()));
  return EquivariantMap(upper.system(), lower.system(), std::move(assignment));
}

bool collapse_preserves_relation(const Level& upper, const Level& lower,
                                 const FiniteSystem& lower_system) {
  if (upper.level() != lower.level() + 1)
    throw std::invalid_argument("collapse check: levels must be adjacent");
  if (lower_system.size() != lower.system().size())
    throw std::invalid_argument("collapse check: lower system size mismatch");
  const FiniteSystem& up = upper.system();
  std::vector<State> image(up.size());
  for (std::size_t s = 0; s < up.size(); ++s)
    image[s] =
        lower.state_of(collapse(upper.point_of(static_cast<State>(s))));
  for (std::size_t s = 0; s < up.size(); ++s)
    for (State t : up.successors(static_cast<State>(s)))
      if (!lower_system.has_arrow(image[s], image[t])) return false;
  return true;
}

bool collapse_preserves_relation(const Level& upper, const Level& lower) {
  return collapse_preserves_relation(upper, lower, lower.system());
}

bool collapse_preserves_relation(int n, std::size_t max_states) {
  const Level lower(n, max_states);
  const Level upper(n + 1, max_states);
  return collapse_preserves_relation(upper, lower);
}

std::vector<Point> wandering_points(const Level& level) {
  std::vector<Point> out;
  for (State s : wandering_states(level.system()))
    out.push_back(level.point_of(s));
  return out;
}

}  // namespace cantordyn::spiral
