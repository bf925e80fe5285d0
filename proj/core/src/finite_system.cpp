#include "cantordyn/finite_system.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cantordyn {

namespace {

void check_labels(std::size_t n, const std::vector<std::string>& labels) {
  if (labels.empty()) return;
  if (labels.size() != n)
    throw std::invalid_argument("labels: expected one label per state");
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("labels: duplicate label");
}

}  // namespace

FiniteSystem::FiniteSystem(DynamicsKind kind,
                           std::vector<std::vector<State>> adjacency,
                           std::vector<std::string> labels)
    : kind_(kind), adjacency_(std::move(adjacency)), labels_(std::move(labels)) {}

FiniteSystem FiniteSystem::permutation(std::vector<State> successor,
                                       std::vector<std::string> labels) {
  const std::size_t n = successor.size();
  if (n == 0) throw std::invalid_argument("permutation: empty state set");
  check_labels(n, labels);
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<State>> adjacency(n);
  for (std::size_t s = 0; s < n; ++s) {
    const State t = successor[s];
    if (t < 0 || static_cast<std::size_t>(t) >= n)
      throw std::invalid_argument("permutation: successor out of range");
    ++indegree[t];
    adjacency[s] = {t};
  }
  for (std::size_t s = 0; s < n; ++s)
    if (indegree[s] != 1)
      throw std::invalid_argument("permutation: not a bijection");
  return FiniteSystem(DynamicsKind::permutation, std::move(adjacency),
                      std::move(labels));
}

FiniteSystem FiniteSystem::relation(std::size_t n_states,
                                    std::vector<std::pair<State, State>> arrows,
                                    std::vector<std::string> labels) {
  if (n_states == 0) throw std::invalid_argument("relation: empty state set");
  check_labels(n_states, labels);
  std::vector<std::vector<State>> adjacency(n_states);
  for (const auto& [from, to] : arrows) {
    if (from < 0 || static_cast<std::size_t>(from) >= n_states || to < 0 ||
        static_cast<std::size_t>(to) >= n_states)
      throw std::invalid_argument("relation: arrow endpoint out of range");
    adjacency[from].push_back(to);
  }
  for (std::size_t s = 0; s < n_states; ++s) {
    auto& succ = adjacency[s];
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    if (succ.empty())
      throw std::invalid_argument("relation: state " + std::to_string(s) +
                                  " has no successor");
  }
  return FiniteSystem(DynamicsKind::relation, std::move(adjacency),
                      std::move(labels));
}

FiniteSystem FiniteSystem::cycle(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cycle: empty state set");
  std::vector<State> successor(n);
  for (std::size_t s = 0; s < n; ++s)
    successor[s] = static_cast<State>((s + 1) % n);
  return permutation(std::move(successor));
}

FiniteSystem FiniteSystem::identity(std::size_t n) {
  if (n == 0) throw std::invalid_argument("identity: empty state set");
  std::vector<State> successor(n);
  std::iota(successor.begin(), successor.end(), 0);
  return permutation(std::move(successor));
}

FiniteSystem FiniteSystem::from_cycle_type(
    const std::vector<std::size_t>& lengths) {
  std::vector<State> successor;
  for (std::size_t len : lengths) {
    if (len == 0) throw std::invalid_argument("cycle type: zero-length cycle");
    const State base = static_cast<State>(successor.size());
    for (std::size_t t = 0; t < len; ++t)
      successor.push_back(base + static_cast<State>((t + 1) % len));
  }
  return permutation(std::move(successor));
}

void FiniteSystem::check_state(State s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= size())
    throw std::invalid_argument("state index out of range");
}

State FiniteSystem::successor(State s) const {
  if (!is_permutation())
    throw std::invalid_argument("successor: permutation systems only");
  check_state(s);
  return adjacency_[s][0];
}

const std::vector<State>& FiniteSystem::successors(State s) const {
  check_state(s);
  return adjacency_[s];
}

bool FiniteSystem::has_arrow(State from, State to) const {
  check_state(from);
  check_state(to);
  const auto& succ = adjacency_[from];
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<std::pair<State, State>> FiniteSystem::arrows() const {
  std::vector<std::pair<State, State>> out;
  out.reserve(arrow_count());
  for (std::size_t s = 0; s < size(); ++s)
    for (State t : adjacency_[s]) out.emplace_back(static_cast<State>(s), t);
  return out;
}

std::size_t FiniteSystem::arrow_count() const {
  std::size_t total = 0;
  for (const auto& succ : adjacency_) total += succ.size();
  return total;
}

std::string FiniteSystem::label(State s) const {
  check_state(s);
  return labels_.empty() ? std::to_string(s) : labels_[s];
}

bool operator==(const FiniteSystem& a, const FiniteSystem& b) {
  if (!same_dynamics(a, b)) return false;
  if (a.labels_.empty() && b.labels_.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a.label(static_cast<State>(s)) != b.label(static_cast<State>(s)))
      return false;
  return true;
}

bool same_dynamics(const FiniteSystem& a, const FiniteSystem& b) {
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a.successors(static_cast<State>(s)) !=
        b.successors(static_cast<State>(s)))
      return false;
  return true;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm: zero argument");
  const std::uint64_t q = a / std::gcd(a, b);
  if (q > std::numeric_limits<std::uint64_t>::max() / b)
    throw std::overflow_error("lcm overflow");
  return q * b;
}

CycleDecomposition cycle_decomposition(const FiniteSystem& sys) {
  if (!sys.is_permutation())
    throw std::invalid_argument("cycle_decomposition: permutation systems only");
  CycleDecomposition dec;
  std::vector<char> seen(sys.size(), 0);
  for (std::size_t start = 0; start < sys.size(); ++start) {
    if (seen[start]) continue;
    std::vector<State> cycle;
    State s = static_cast<State>(start);
    do {
      seen[s] = 1;
      cycle.push_back(s);
      s = sys.successor(s);
    } while (s != static_cast<State>(start));
    dec.order = checked_lcm(dec.order, cycle.size());
    dec.lengths.push_back(cycle.size());
    dec.cycles.push_back(std::move(cycle));
  }
  return dec;
}

std::optional<std::vector<std::vector<State>>> cyclic_partition(
    const FiniteSystem& sys, std::uint64_t k) {
  if (!sys.is_permutation())
    throw std::invalid_argument("cyclic_partition: permutation systems only");
  if (k == 0) throw std::invalid_argument("cyclic_partition: k must be >= 1");
  const CycleDecomposition dec = cycle_decomposition(sys);
  for (std::size_t len : dec.lengths)
    if (len % k != 0) return std::nullopt;
  // Anchor every cycle at its minimal state; sigma then advances the block
  // index by one, so block j collects positions congruent to j mod k.
  std::vector<std::vector<State>> blocks(static_cast<std::size_t>(k));
  for (const auto& cycle : dec.cycles)
    for (std::size_t t = 0; t < cycle.size(); ++t)
      blocks[t % k].push_back(cycle[t]);
  for (auto& block : blocks) std::sort(block.begin(), block.end());
  return blocks;
}

std::vector<State> wandering_states(const FiniteSystem& sys) {
  const std::size_t n = sys.size();
  // Tarjan SCC, iterative.  A state lies on a cycle iff its component has
  // more than one state or it carries a self-loop.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0), on_cycle(n, 0);
  std::vector<State> stack;
  int next_index = 0;
  struct Frame {
    State s;
    std::size_t next_child;
  };
  std::vector<Frame> dfs;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    index[root] = low[root] = next_index++;
    stack.push_back(static_cast<State>(root));
    on_stack[root] = 1;
    dfs.push_back({static_cast<State>(root), 0});
    while (!dfs.empty()) {
      Frame& frame = dfs.back();
      const auto& succ = sys.successors(frame.s);
      if (frame.next_child < succ.size()) {
        const State w = succ[frame.next_child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          dfs.push_back({w, 0});
        } else if (on_stack[w]) {
          low[frame.s] = std::min(low[frame.s], index[w]);
        }
      } else {
        const State s = frame.s;
        dfs.pop_back();
        if (!dfs.empty()) low[dfs.back().s] = std::min(low[dfs.back().s], low[s]);
        if (low[s] == index[s]) {
          std::vector<State> component;
          for (;;) {
            const State w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            component.push_back(w);
            if (w == s) break;
          }
          if (component.size() > 1 || sys.has_arrow(s, s))
            for (State w : component) on_cycle[w] = 1;
        }
      }
    }
  }
  std::vector<State> wandering;
  for (std::size_t s = 0; s < n; ++s)
    if (!on_cycle[s]) wandering.push_back(static_cast<State>(s));
  return wandering;
}

}  // namespace cantordyn
