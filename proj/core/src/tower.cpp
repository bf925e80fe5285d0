#include "cantordyn/tower.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cantordyn/errors.hpp"

namespace cantordyn::tower {

namespace {

void check_level_index(const Tower& t, std::size_t level, const char* what) {
  if (level >= t.levels.size())
    throw std::invalid_argument(std::string(what) + ": level " +
                                std::to_string(level) +
                                " outside tower of depth " +
                                std::to_string(t.levels.size()));
}

void check_clopen(const Tower& t, const ClopenSet& u) {
  check_level_index(t, u.level, "clopen set");
  if (u.states.empty())
    throw std::invalid_argument("clopen set: empty state set");
  const State n = static_cast<State>(t.levels[u.level].size());
  for (std::size_t i = 0; i < u.states.size(); ++i) {
    if (u.states[i] < 0 || u.states[i] >= n)
      throw std::invalid_argument("clopen set: state out of range");
    if (i > 0 && u.states[i] <= u.states[i - 1])
      throw std::invalid_argument("clopen set: states must be sorted and "
                                  "duplicate-free");
  }
}

void check_partition(const Tower& t, const LevelPartition& p) {
  check_level_index(t, p.level, "partition");
  const std::size_t n = t.levels[p.level].size();
  std::vector<bool> seen(n, false);
  std::size_t covered = 0;
  for (const auto& block : p.blocks) {
    if (block.empty())
      throw std::invalid_argument("partition: empty block");
    for (State s : block) {
      if (s < 0 || static_cast<std::size_t>(s) >= n)
        throw std::invalid_argument("partition: state out of range");
      if (seen[s])
        throw std::invalid_argument("partition: state " + std::to_string(s) +
                                    " appears in two blocks");
      seen[s] = true;
      ++covered;
    }
  }
  if (covered != n)
    throw std::invalid_argument("partition: blocks do not cover the level");
}

/// Composite bonding assignment from levels[from] down to levels[to].
std::vector<State> composite_assignment(const Tower& t, std::size_t from,
                                        std::size_t to) {
  std::vector<State> comp(t.levels[from].size());
  std::iota(comp.begin(), comp.end(), 0);
  for (std::size_t i = from; i > to; --i)
    for (State& value : comp) value = t.bondings[i - 1](value);
  return comp;
}

std::vector<int> block_index_of(const LevelPartition& p, std::size_t n) {
  std::vector<int> index(n, -1);
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    for (State s : p.blocks[b]) index[s] = static_cast<int>(b);
  return index;
}

std::uint64_t cycle_length_gcd(const FiniteSystem& sys) {
  std::uint64_t g = 0;
  for (std::size_t length : cycle_decomposition(sys).lengths)
    g = std::gcd(g, static_cast<std::uint64_t>(length));
  return g;
}

std::uint64_t least_prime_factor(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

}  // namespace

ValidationReport validate(const Tower& t) {
  if (t.levels.empty())
    return {false, "tower has no levels", std::nullopt};
  if (t.bondings.size() + 1 != t.levels.size())
    return {false,
            "tower with " + std::to_string(t.levels.size()) +
                " levels needs " + std::to_string(t.levels.size() - 1) +
                " bondings, got " + std::to_string(t.bondings.size()),
            std::nullopt};
  for (std::size_t i = 0; i < t.bondings.size(); ++i) {
    const EquivariantMap& b = t.bondings[i];
    if (!same_dynamics(b.source(), t.levels[i + 1]))
      return {false,
              "bonding " + std::to_string(i) + " does not start at level " +
                  std::to_string(i + 1),
              i};
    if (!same_dynamics(b.target(), t.levels[i]))
      return {false,
              "bonding " + std::to_string(i) + " does not end at level " +
                  std::to_string(i),
              i};
    if (!is_equivariant(b))
      return {false, "bonding " + std::to_string(i) + " is not equivariant",
              i};
    if (!is_surjective(b))
      return {false, "bonding " + std::to_string(i) + " is not surjective",
              i};
  }
  // Surjective bondings already force nondecreasing sizes; cantor towers
  // must grow strictly.
  if (t.cantor)
    for (std::size_t i = 0; i + 1 < t.levels.size(); ++i)
      if (t.levels[i + 1].size() <= t.levels[i].size())
        return {false,
                "cantor tower does not grow at level " + std::to_string(i + 1),
                i + 1};
  return {true, "", std::nullopt};
}

Tower from_odometer(const odometer::Spec& spec, std::size_t depth,
                    std::uint64_t max_states) {
  if (depth == 0)
    throw std::invalid_argument("odometer tower: depth must be >= 1");
  Tower t;
  t.cantor = true;
  for (std::size_t n = 1; n <= depth; ++n)
    t.levels.push_back(odometer::truncation(spec, n, max_states).system);
  for (std::size_t n = 1; n < depth; ++n)
    t.bondings.push_back(odometer::bonding(spec, n, max_states));
  return t;
}

Tower from_spirals(int depth, std::size_t max_states) {
  if (depth < 1)
    throw std::invalid_argument("spiral tower: depth must be >= 1");
  Tower t;
  t.cantor = true;
  std::optional<spiral::Level> below;
  for (int n = 1; n <= depth; ++n) {
    spiral::Level current(n, max_states);
    t.levels.push_back(current.system());
    if (below) t.bondings.push_back(spiral::collapse_map(current, *below));
    below = std::move(current);
  }
  return t;
}

LevelPartition atoms(const Tower& t, std::size_t level) {
  check_level_index(t, level, "atoms");
  LevelPartition p{level, {}};
  p.blocks.reserve(t.levels[level].size());
  for (std::size_t s = 0; s < t.levels[level].size(); ++s)
    p.blocks.push_back({static_cast<State>(s)});
  return p;
}

LevelPartition fiber_partition(const EquivariantMap& phi, std::size_t level) {
  std::vector<std::vector<State>> fibers(phi.target().size());
  for (std::size_t s = 0; s < phi.source().size(); ++s)
    fibers[phi(static_cast<State>(s))].push_back(static_cast<State>(s));
  LevelPartition p{level, {}};
  for (auto& fiber : fibers)
    if (!fiber.empty()) p.blocks.push_back(std::move(fiber));
  return p;
}

EquivariantMap bonding_composite(const Tower& t, std::size_t from_level,
                                 std::size_t to_level) {
  check_level_index(t, from_level, "bonding composite");
  check_level_index(t, to_level, "bonding composite");
  if (from_level < to_level)
    throw std::invalid_argument("bonding composite: maps run downward only");
  return EquivariantMap(t.levels[from_level], t.levels[to_level],
                        composite_assignment(t, from_level, to_level));
}

ClopenSet pull(const Tower& t, const ClopenSet& u, std::size_t to_level) {
  check_clopen(t, u);
  check_level_index(t, to_level, "pull");
  if (to_level < u.level)
    throw std::invalid_argument("pull: target level is above the clopen set");
  const std::vector<State> comp = composite_assignment(t, to_level, u.level);
  std::vector<bool> member(t.levels[u.level].size(), false);
  for (State s : u.states) member[s] = true;
  ClopenSet out{to_level, {}};
  for (std::size_t x = 0; x < comp.size(); ++x)
    if (member[comp[x]]) out.states.push_back(static_cast<State>(x));
  return out;
}

LevelPartition pull(const Tower& t, const LevelPartition& p,
                    std::size_t to_level) {
  check_partition(t, p);
  check_level_index(t, to_level, "pull");
  if (to_level < p.level)
    throw std::invalid_argument("pull: target level is above the partition");
  const std::vector<State> comp = composite_assignment(t, to_level, p.level);
  const std::vector<int> index = block_index_of(p, t.levels[p.level].size());
  LevelPartition out{to_level, std::vector<std::vector<State>>(p.blocks.size())};
  for (std::size_t x = 0; x < comp.size(); ++x)
    out.blocks[index[comp[x]]].push_back(static_cast<State>(x));
  return out;
}

ClopenSet canonical(const Tower& t, const ClopenSet& u) {
  check_clopen(t, u);
  ClopenSet cur = u;
  while (cur.level > 0) {
    const EquivariantMap& b = t.bondings[cur.level - 1];
    std::vector<State> image;
    for (State s : cur.states) image.push_back(b(s));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::vector<bool> member(t.levels[cur.level - 1].size(), false);
    for (State s : image) member[s] = true;
    std::vector<State> preimage;
    for (std::size_t x = 0; x < t.levels[cur.level].size(); ++x)
      if (member[b(static_cast<State>(x))])
        preimage.push_back(static_cast<State>(x));
    if (preimage != cur.states) break;
    cur = ClopenSet{cur.level - 1, std::move(image)};
  }
  return cur;
}

LevelPartition normalized(const LevelPartition& p) {
  LevelPartition out = p;
  for (auto& block : out.blocks) std::sort(block.begin(), block.end());
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

bool refines(const LevelPartition& p, const LevelPartition& q,
             const Tower& t) {
  check_partition(t, p);
  check_partition(t, q);
  const std::size_t deep = std::max(p.level, q.level);
  const LevelPartition fine = pull(t, p, deep);
  const LevelPartition coarse = pull(t, q, deep);
  const std::vector<int> coarse_index =
      block_index_of(coarse, t.levels[deep].size());
  for (const auto& block : fine.blocks) {
    if (block.empty()) continue;
    const int home = coarse_index[block.front()];
    for (State s : block)
      if (coarse_index[s] != home) return false;
  }
  return true;
}

std::optional<std::uint64_t> clopen_period(const Tower& t,
                                           const ClopenSet& u) {
  check_clopen(t, u);
  const FiniteSystem& sys = t.levels[u.level];
  if (!sys.is_permutation()) return std::nullopt;
  std::vector<bool> member(sys.size(), false);
  for (State s : u.states) member[s] = true;
  // sigma^n(U) = U splits over cycles: on a cycle of length L the
  // membership pattern must be invariant under rotation by n, so the least
  // per-cycle period divides L and the global period is their lcm.
  std::uint64_t period = 1;
  for (const auto& cycle : cycle_decomposition(sys).cycles) {
    const std::size_t length = cycle.size();
    std::uint64_t cycle_period = length;
    for (std::size_t d = 1; d < length; ++d) {
      if (length % d != 0) continue;
      bool invariant = true;
      for (std::size_t j = 0; j < length && invariant; ++j)
        invariant = member[cycle[j]] == member[cycle[(j + d) % length]];
      if (invariant) {
        cycle_period = d;
        break;
      }
    }
    period = checked_lcm(period, cycle_period);
  }
  return period;
}

std::optional<ClopenSet> find_wandering_clopen(const Tower& t,
                                               std::size_t depth) {
  // Permutation levels have no wandering states at all (every state sits on
  // a cycle and returns), so only relation levels can yield a witness.
  for (std::size_t level = 0; level < std::min(depth, t.levels.size());
       ++level) {
    if (t.levels[level].is_permutation()) continue;
    const std::vector<State> wandering = wandering_states(t.levels[level]);
    if (!wandering.empty())
      return ClopenSet{level, {wandering.front()}};
  }
  return std::nullopt;
}

std::optional<CyclicChain> cyclic_refinement_chain(const Tower& t,
                                                   std::size_t depth) {
  if (depth == 0)
    throw std::invalid_argument("cyclic refinement chain: depth must be >= 1");
  if (t.levels.empty())
    throw std::invalid_argument("cyclic refinement chain: empty tower");
  for (const FiniteSystem& level : t.levels)
    if (!level.is_permutation())
      throw std::invalid_argument(
          "cyclic refinement chain: tower has a relation level");

  CyclicChain chain;
  std::uint64_t m = 1;          // block count of the previous partition
  std::size_t level = 0;        // its level
  std::vector<int> block_of(t.levels[0].size(), 0);  // its block index map

  for (std::size_t step = 0; step < depth; ++step) {
    // A cyclic (m * a)-partition of a level exists iff m * a divides every
    // cycle length, i.e. divides g = gcd of the cycle lengths; g only gains
    // divisors going up the tower, so take the shallowest level that admits
    // some ratio and the least ratio there (the least prime factor of g/m).
    std::optional<std::size_t> found_level;
    std::uint64_t ratio = 0;
    for (std::size_t candidate = level; candidate < t.levels.size();
         ++candidate) {
      const std::uint64_t g = cycle_length_gcd(t.levels[candidate]);
      if (g % m != 0 || g / m < 2) continue;
      found_level = candidate;
      ratio = least_prime_factor(g / m);
      break;
    }
    if (!found_level) return std::nullopt;

    const FiniteSystem& sys = t.levels[*found_level];
    const std::vector<State> comp =
        composite_assignment(t, *found_level, level);
    const std::uint64_t blocks = m * ratio;
    LevelPartition partition{*found_level,
                             std::vector<std::vector<State>>(blocks)};
    std::vector<int> next_block_of(sys.size());
    for (const auto& cycle : cycle_decomposition(sys).cycles) {
      // Anchor the phase so block indices extend the previous partition's
      // indices mod m: the cycle's minimal state keeps its pulled index.
      const std::uint64_t anchor =
          static_cast<std::uint64_t>(block_of[comp[cycle.front()]]);
      for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
        const std::uint64_t b = (anchor + pos) % blocks;
        partition.blocks[b].push_back(cycle[pos]);
        next_block_of[cycle[pos]] = static_cast<int>(b);
      }
    }
    for (auto& block : partition.blocks)
      std::sort(block.begin(), block.end());

    chain.ratios.push_back(ratio);
    chain.partitions.push_back(std::move(partition));
    m = blocks;
    level = *found_level;
    block_of = std::move(next_block_of);
  }
  return chain;
}

LiftResult find_lift(const Tower& t, std::size_t phi_level, int spiral_n,
                     const EquivariantMap& phi,
                     const LevelPartition& refinement, std::size_t max_k,
                     std::size_t max_level, std::size_t spiral_cap) {
  const auto fail = [](std::string message) {
    return LiftResult{LiftStatus::precondition_failed, std::nullopt,
                      std::move(message)};
  };
  if (t.levels.empty()) return fail("tower has no levels");
  if (phi_level >= t.levels.size())
    return fail("phi level " + std::to_string(phi_level) +
                " outside tower of depth " + std::to_string(t.levels.size()));
  if (spiral_n < 1) return fail("spiral level must be >= 1");
  const spiral::Level base(spiral_n, spiral_cap);
  if (!same_dynamics(phi.source(), t.levels[phi_level]))
    return fail("phi's source is not tower level " + std::to_string(phi_level));
  if (!same_dynamics(phi.target(), base.system()))
    return fail("phi's target is not spiral level " +
                std::to_string(spiral_n));
  if (!is_equivariant(phi)) return fail("phi is not equivariant");
  if (!is_surjective(phi)) return fail("phi is not surjective");
  if (refinement.level != phi_level)
    return fail("refinement must partition phi's tower level");
  try {
    check_partition(t, refinement);
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }
  if (!refines(refinement, fiber_partition(phi, phi_level), t))
    return fail("refinement does not refine phi's fiber partition");

  const std::size_t top = std::min(max_level, t.levels.size() - 1);
  for (std::size_t k = 1; k <= max_k; ++k) {
    std::optional<spiral::Level> up;
    try {
      up.emplace(spiral_n + static_cast<int>(k), spiral_cap);
    } catch (const resource_limit_error&) {
      return {LiftStatus::absent_within_bounds, std::nullopt,
              "no lift found for k < " + std::to_string(k) +
                  "; spiral level " + std::to_string(spiral_n + k) +
                  " exceeds the state cap"};
    }
    const EquivariantMap xi = spiral::collapse_map(*up, base);
    std::vector<std::vector<State>> fiber_of_target(base.system().size());
    for (std::size_t w = 0; w < up->system().size(); ++w)
      fiber_of_target[xi(static_cast<State>(w))].push_back(
          static_cast<State>(w));

    for (std::size_t level = phi_level; level <= top; ++level) {
      const std::vector<State> comp =
          composite_assignment(t, level, phi_level);
      std::vector<std::vector<State>> allowed(t.levels[level].size());
      for (std::size_t x = 0; x < allowed.size(); ++x)
        allowed[x] = fiber_of_target[phi(comp[x])];
      const LevelPartition pulled = pull(t, refinement, level);
      const std::vector<int> merge_classes =
          block_index_of(pulled, t.levels[level].size());

      MorphismSearchOptions options;
      options.require_surjective = true;
      options.max_results = 1;
      options.allowed = &allowed;
      options.merge_classes = &merge_classes;
      std::vector<EquivariantMap> found =
          find_equivariant_maps(t.levels[level], up->system(), options);
      if (found.empty()) continue;

      const EquivariantMap& psi = found.front();
      bool verified = is_equivariant(psi) && is_surjective(psi) &&
                      refines(fiber_partition(psi, level), pulled, t);
      for (std::size_t x = 0; verified && x < psi.source().size(); ++x)
        verified = xi(psi(static_cast<State>(x))) == phi(comp[x]);
      if (!verified)
        throw std::logic_error(
            "find_lift: witness failed independent re-verification");
      return {LiftStatus::found, LiftWitness{k, level, psi}, ""};
    }
  }
  return {LiftStatus::absent_within_bounds, std::nullopt,
          "no lift with k <= " + std::to_string(max_k) +
              " from tower levels " + std::to_string(phi_level) + ".." +
              std::to_string(top)};
}

}  // namespace cantordyn::tower
