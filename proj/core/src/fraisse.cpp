#include "cantordyn/fraisse.hpp"

#include <algorithm>
#include <stdexcept>

#include "cantordyn/errors.hpp"

namespace cantordyn::fraisse {

namespace {

constexpr std::uint64_t kApexCap = std::uint64_t{1} << 24;

/// The unique map onto the one-state system.
EquivariantMap to_point(const FiniteSystem& sys, const FiniteSystem& point) {
  return EquivariantMap(sys, point, std::vector<State>(sys.size(), 0));
}

bool realized_by(const FiniteSystem& top, const FiniteSystem& target) {
  return !find_equivariant_maps(top, target, /*require_surjective=*/true,
                                /*max_results=*/1)
              .empty();
}

void descend_partitions(std::size_t remaining, std::size_t max_part,
                        std::vector<std::size_t>& current,
                        std::vector<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    descend_partitions(remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

JointEmbedding joint_embed(const FiniteSystem& x, const FiniteSystem& y) {
  Product prod = product(x, y);
  if (!is_equivariant(prod.onto_first) || !is_surjective(prod.onto_first) ||
      !is_equivariant(prod.onto_second) || !is_surjective(prod.onto_second))
    throw std::logic_error("joint_embed: projections failed certification");
  return {std::move(prod.system), std::move(prod.onto_first),
          std::move(prod.onto_second)};
}

std::optional<std::string> check_problem(const AmalgamProblem& p) {
  if (!p.base.is_permutation()) return "base is not a permutation system";
  if (!p.left().is_permutation()) return "left system is not a permutation system";
  if (!p.right().is_permutation())
    return "right system is not a permutation system";
  if (!same_dynamics(p.f.target(), p.base))
    return "f does not map into the base";
  if (!same_dynamics(p.g.target(), p.base))
    return "g does not map into the base";
  if (!is_equivariant(p.f)) return "f is not equivariant";
  if (!is_surjective(p.f)) return "f is not surjective";
  if (!is_equivariant(p.g)) return "g is not equivariant";
  if (!is_surjective(p.g)) return "g is not surjective";
  return std::nullopt;
}

AmalgamSolution amalgamate(const AmalgamProblem& p) {
  if (const auto problem = check_problem(p))
    throw std::invalid_argument("amalgamate: " + *problem);

  const CycleDecomposition base_cycles = cycle_decomposition(p.base);
  const CycleDecomposition left_cycles = cycle_decomposition(p.left());
  const CycleDecomposition right_cycles = cycle_decomposition(p.right());

  std::vector<std::size_t> base_cycle_of(p.base.size());
  for (std::size_t c = 0; c < base_cycles.cycles.size(); ++c)
    for (State s : base_cycles.cycles[c]) base_cycle_of[s] = c;

  // Equivariance maps each left/right cycle onto one base cycle.
  const std::size_t components = base_cycles.cycles.size();
  std::vector<std::vector<std::size_t>> left_over(components);
  std::vector<std::vector<std::size_t>> right_over(components);
  for (std::size_t i = 0; i < left_cycles.cycles.size(); ++i)
    left_over[base_cycle_of[p.f(left_cycles.cycles[i].front())]].push_back(i);
  for (std::size_t i = 0; i < right_cycles.cycles.size(); ++i)
    right_over[base_cycle_of[p.g(right_cycles.cycles[i].front())]].push_back(i);

  std::vector<std::size_t> cycles_needed(components);
  std::vector<std::uint64_t> cycle_length(components);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < components; ++c) {
    // Surjectivity puts at least one cycle on each side of every component.
    cycles_needed[c] = std::max(left_over[c].size(), right_over[c].size());
    std::uint64_t m = 1;
    for (std::size_t i : left_over[c])
      m = checked_lcm(m, left_cycles.lengths[i]);
    for (std::size_t i : right_over[c])
      m = checked_lcm(m, right_cycles.lengths[i]);
    cycle_length[c] = m;
    const std::uint64_t component = cycles_needed[c] * m;
    if (component / m != cycles_needed[c] || total > kApexCap - component)
      throw resource_limit_error("amalgamate: apex state count over cap");
    total += component;
  }

  std::vector<State> rho(total);
  std::vector<State> onto_left(total);
  std::vector<State> onto_right(total);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < components; ++c) {
    for (std::size_t j = 0; j < cycles_needed[c]; ++j) {
      const auto& lc = left_cycles.cycles[left_over[c][j % left_over[c].size()]];
      const auto& rc =
          right_cycles.cycles[right_over[c][j % right_over[c].size()]];
      // Anchor the right side on the least state over the left anchor's
      // base image, so f o onto_left = g o onto_right along the cycle.
      const State base_image = p.f(lc.front());
      std::size_t right_anchor = rc.size();
      for (std::size_t pos = 0; pos < rc.size(); ++pos)
        if (p.g(rc[pos]) == base_image &&
            (right_anchor == rc.size() || rc[pos] < rc[right_anchor]))
          right_anchor = pos;
      if (right_anchor == rc.size())
        throw std::logic_error("amalgamate: right cycle misses the anchor");
      const std::uint64_t m = cycle_length[c];
      for (std::uint64_t t = 0; t < m; ++t) {
        const std::size_t z = offset + t;
        rho[z] = static_cast<State>(offset + (t + 1) % m);
        onto_left[z] = lc[t % lc.size()];
        onto_right[z] = rc[(right_anchor + t) % rc.size()];
      }
      offset += m;
    }
  }

  FiniteSystem apex = FiniteSystem::permutation(std::move(rho));
  EquivariantMap h(apex, p.left(), std::move(onto_left));
  EquivariantMap i(apex, p.right(), std::move(onto_right));
  return {std::move(apex), std::move(h), std::move(i)};
}

bool verify_amalgam(const AmalgamProblem& p, const AmalgamSolution& s) {
  if (!same_dynamics(s.onto_left.source(), s.apex) ||
      !same_dynamics(s.onto_right.source(), s.apex) ||
      !same_dynamics(s.onto_left.target(), p.left()) ||
      !same_dynamics(s.onto_right.target(), p.right()))
    return false;
  if (!is_equivariant(s.onto_left) || !is_equivariant(s.onto_right))
    return false;
  if (!is_surjective(s.onto_left) || !is_surjective(s.onto_right))
    return false;
  for (std::size_t z = 0; z < s.apex.size(); ++z)
    if (p.f(s.onto_left(static_cast<State>(z))) !=
        p.g(s.onto_right(static_cast<State>(z))))
      return false;
  return true;
}

std::vector<std::vector<std::size_t>> partitions_of(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  descend_partitions(n, n, current, out);
  return out;
}

tower::Tower generic_chain(const std::vector<std::size_t>& size_schedule,
                           std::size_t depth, std::size_t max_states) {
  if (depth == 0)
    throw std::invalid_argument("generic chain: depth must be >= 1");
  if (size_schedule.empty())
    throw std::invalid_argument("generic chain: empty size schedule");
  for (std::size_t i = 0; i < size_schedule.size(); ++i) {
    if (size_schedule[i] < 1)
      throw std::invalid_argument("generic chain: schedule bounds must be >= 1");
    if (i > 0 && size_schedule[i] < size_schedule[i - 1])
      throw std::invalid_argument("generic chain: schedule must be nondecreasing");
  }

  tower::Tower t;
  t.cantor = true;
  t.levels.push_back(FiniteSystem::cycle(1));
  const FiniteSystem point = FiniteSystem::cycle(1);

  for (std::size_t step = 1; step < depth; ++step) {
    const std::size_t bound =
        size_schedule[std::min(step - 1, size_schedule.size() - 1)];
    FiniteSystem top = t.levels.back();
    EquivariantMap down = identity_map(top);
    bool grew = false;
    for (std::size_t size = 1; size <= bound; ++size) {
      for (const auto& cycle_type : partitions_of(size)) {
        const FiniteSystem target = FiniteSystem::from_cycle_type(cycle_type);
        if (realized_by(top, target)) continue;
        AmalgamSolution merged = amalgamate(
            {point, to_point(top, point), to_point(target, point)});
        if (merged.apex.size() > max_states)
          throw resource_limit_error("generic chain: level over " +
                                     std::to_string(max_states) + " states");
        down = compose(down, merged.onto_left);
        top = std::move(merged.apex);
        grew = true;
      }
    }
    if (!grew) {
      // Everything scheduled is already realized; refine properly anyway.
      Product doubled = product(top, FiniteSystem::cycle(2));
      if (doubled.system.size() > max_states)
        throw resource_limit_error("generic chain: level over " +
                                   std::to_string(max_states) + " states");
      down = compose(down, doubled.onto_first);
      top = std::move(doubled.system);
    }
    t.levels.push_back(std::move(top));
    t.bondings.push_back(std::move(down));
  }
  return t;
}

ChainCertificate certify_chain(const tower::Tower& chain, int spiral_depth,
                               std::size_t max_states) {
  if (chain.levels.empty())
    throw std::invalid_argument("certify chain: empty tower");
  for (const FiniteSystem& level : chain.levels)
    if (!level.is_permutation())
      throw std::invalid_argument("certify chain: tower has a relation level");
  if (spiral_depth < 1)
    throw std::invalid_argument("certify chain: spiral depth must be >= 1");

  ChainCertificate cert;
  cert.atoms_periodic = true;
  for (std::size_t level = 0; level < chain.levels.size(); ++level) {
    const std::uint64_t order =
        cycle_decomposition(chain.levels[level]).order;
    cert.level_orders.push_back(order);
    std::uint64_t max_period = 0;
    for (std::size_t s = 0; s < chain.levels[level].size(); ++s) {
      const std::optional<std::uint64_t> period = tower::clopen_period(
          chain, tower::ClopenSet{level, {static_cast<State>(s)}});
      if (!period || *period == 0 || order % *period != 0) {
        cert.atoms_periodic = false;
        continue;
      }
      max_period = std::max(max_period, *period);
    }
    cert.max_atom_periods.push_back(max_period);
  }

  cert.spirals_wander = true;
  for (int n = 1; n <= spiral_depth; ++n) {
    const spiral::Level level(n, max_states);
    const std::vector<spiral::Point> wandering = spiral::wandering_points(level);
    cert.wandering_counts.push_back(wandering.size());
    if (wandering.empty())
      cert.spirals_wander = false;
    else
      cert.wandering_samples.push_back(wandering.front());
  }
  return cert;
}

}  // namespace cantordyn::fraisse
