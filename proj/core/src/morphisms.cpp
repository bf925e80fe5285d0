#include "cantordyn/morphisms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cantordyn/errors.hpp"

namespace cantordyn {

EquivariantMap::EquivariantMap(FiniteSystem source, FiniteSystem target,
                               std::vector<State> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.size())
    throw std::invalid_argument("map: assignment length != source size");
  for (State t : assignment_)
    if (t < 0 || static_cast<std::size_t>(t) >= target_.size())
      throw std::invalid_argument("map: assignment value out of target range");
}

State EquivariantMap::operator()(State s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= assignment_.size())
    throw std::invalid_argument("map: state out of range");
  return assignment_[s];
}

bool operator==(const EquivariantMap& a, const EquivariantMap& b) {
  return a.assignment_ == b.assignment_ && a.source_ == b.source_ &&
         a.target_ == b.target_;
}

bool is_equivariant(const EquivariantMap& f) {
  const FiniteSystem& src = f.source();
  const FiniteSystem& tgt = f.target();
  for (std::size_t s = 0; s < src.size(); ++s)
    for (State y : src.successors(static_cast<State>(s)))
      if (!tgt.has_arrow(f(static_cast<State>(s)), f(y))) return false;
  return true;
}

bool is_surjective(const EquivariantMap& f) {
  std::vector<char> hit(f.target().size(), 0);
  for (State t : f.assignment()) hit[t] = 1;
  return std::find(hit.begin(), hit.end(), 0) == hit.end();
}

EquivariantMap identity_map(const FiniteSystem& sys) {
  std::vector<State> assignment(sys.size());
  for (std::size_t s = 0; s < sys.size(); ++s)
    assignment[s] = static_cast<State>(s);
  return EquivariantMap(sys, sys, std::move(assignment));
}

EquivariantMap compose(const EquivariantMap& outer, const EquivariantMap& inner) {
  if (!same_dynamics(inner.target(), outer.source()))
    throw std::invalid_argument("compose: middle systems differ");
  std::vector<State> assignment(inner.source().size());
  for (std::size_t s = 0; s < assignment.size(); ++s)
    assignment[s] = outer(inner(static_cast<State>(s)));
  return EquivariantMap(inner.source(), outer.target(), std::move(assignment));
}

Product product(const FiniteSystem& x, const FiniteSystem& y) {
  if (!x.is_permutation() || !y.is_permutation())
    throw std::invalid_argument("product: permutation systems only");
  const std::size_t nx = x.size(), ny = y.size();
  if (nx > (static_cast<std::size_t>(1) << 24) / ny)
    throw resource_limit_error("product: state count over cap");
  std::vector<State> successor(nx * ny);
  std::vector<std::string> labels(nx * ny);
  std::vector<State> first(nx * ny), second(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const std::size_t s = i * ny + j;
      successor[s] = static_cast<State>(
          static_cast<std::size_t>(x.successor(static_cast<State>(i))) * ny +
          static_cast<std::size_t>(y.successor(static_cast<State>(j))));
      labels[s] = "(" + x.label(static_cast<State>(i)) + "," +
                  y.label(static_cast<State>(j)) + ")";
      first[s] = static_cast<State>(i);
      second[s] = static_cast<State>(j);
    }
  }
  FiniteSystem system = FiniteSystem::permutation(std::move(successor),
                                                  std::move(labels));
  EquivariantMap onto_first(system, x, std::move(first));
  EquivariantMap onto_second(system, y, std::move(second));
  return Product{std::move(system), std::move(onto_first),
                 std::move(onto_second)};
}

namespace {

struct Search {
  const FiniteSystem& src;
  const FiniteSystem& tgt;
  const MorphismSearchOptions& opt;
  std::vector<std::vector<State>> predecessors;  // excludes self-loops
  std::vector<State> assign;
  std::vector<int> cover;       // per target state: assigned preimage count
  std::vector<int> fiber_class; // per target state: merge class id in use
  std::size_t uncovered;
  std::vector<EquivariantMap> out;
  bool done = false;

  Search(const FiniteSystem& s, const FiniteSystem& t,
         const MorphismSearchOptions& o)
      : src(s), tgt(t), opt(o), predecessors(s.size()),
        assign(s.size(), -1), cover(t.size(), 0), fiber_class(t.size(), -1),
        uncovered(t.size()) {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (State b : s.successors(static_cast<State>(a)))
        if (b != static_cast<State>(a))
          predecessors[b].push_back(static_cast<State>(a));
  }

  bool consistent(State s, State value) const {
    // Arrows whose endpoints are both decided once s takes this value.
    for (State y : src.successors(s)) {
      if (y > s) continue;
      const State fy = (y == s) ? value : assign[y];
      if (!tgt.has_arrow(value, fy)) return false;
    }
    for (State x : predecessors[s]) {
      if (x > s) continue;
      if (!tgt.has_arrow(assign[x], value)) return false;
    }
    if (opt.merge_classes && cover[value] > 0 &&
        fiber_class[value] != (*opt.merge_classes)[s])
      return false;
    return true;
  }

  void run(State s) {
    if (done) return;
    if (static_cast<std::size_t>(s) == src.size()) {
      out.emplace_back(src, tgt, assign);
      if (out.size() >= opt.max_results) done = true;
      return;
    }
    const std::vector<State>* candidates =
        opt.allowed ? &(*opt.allowed)[s] : nullptr;
    const std::size_t count = candidates ? candidates->size() : tgt.size();
    for (std::size_t c = 0; c < count && !done; ++c) {
      const State value = candidates ? (*candidates)[c] : static_cast<State>(c);
      if (!consistent(s, value)) continue;
      const bool fresh = cover[value] == 0;
      if (opt.require_surjective) {
        const std::size_t remaining = src.size() - s - 1;
        if (uncovered - (fresh ? 1 : 0) > remaining) continue;
      }
      assign[s] = value;
      ++cover[value];
      if (fresh) {
        --uncovered;
        if (opt.merge_classes) fiber_class[value] = (*opt.merge_classes)[s];
      }
      run(s + 1);
      assign[s] = -1;
      if (--cover[value] == 0) {
        ++uncovered;
        fiber_class[value] = -1;
      }
    }
  }
};

}  // namespace

std::vector<EquivariantMap> find_equivariant_maps(
    const FiniteSystem& source, const FiniteSystem& target,
    const MorphismSearchOptions& options) {
  if (options.allowed && options.allowed->size() != source.size())
    throw std::invalid_argument("search: allowed lists != source size");
  if (options.merge_classes && options.merge_classes->size() != source.size())
    throw std::invalid_argument("search: merge classes != source size");
  if (options.max_results == 0) return {};
  Search search(source, target, options);
  search.run(0);
  return std::move(search.out);
}

std::vector<EquivariantMap> find_equivariant_maps(const FiniteSystem& source,
                                                  const FiniteSystem& target,
                                                  bool require_surjective,
                                                  std::size_t max_results) {
  MorphismSearchOptions options;
  options.require_surjective = require_surjective;
  options.max_results = max_results;
  return find_equivariant_maps(source, target, options);
}

}  // namespace cantordyn
