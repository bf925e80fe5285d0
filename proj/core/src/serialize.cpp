#include "cantordyn/serialize.hpp"

#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace cantordyn::serialize {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
  return j;
}

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(std::string("missing JSON key \"") + key +
                                "\"");
  return *it;
}

std::vector<State> state_array(const json& j, const char* key) {
  if (!j.is_array())
    throw std::invalid_argument(std::string("JSON key \"") + key +
                                "\" must be an array of states");
  std::vector<State> out;
  out.reserve(j.size());
  for (const json& item : j) {
    if (!item.is_number_integer())
      throw std::invalid_argument(std::string("JSON key \"") + key +
                                  "\" must contain integers");
    out.push_back(item.get<State>());
  }
  return out;
}

json system_to_value(const FiniteSystem& sys) {
  json states = json::array();
  for (std::size_t s = 0; s < sys.size(); ++s)
    states.push_back(sys.label(static_cast<State>(s)));
  json dynamics = json::array();
  for (const auto& [from, to] : sys.arrows())
    dynamics.push_back(json::array({from, to}));
  return json{{"states", std::move(states)},
              {"kind", sys.is_permutation() ? "perm" : "rel"},
              {"dynamics", std::move(dynamics)}};
}

FiniteSystem system_from_value(const json& j) {
  const json& states = field(j, "states");
  if (!states.is_array())
    throw std::invalid_argument("JSON key \"states\" must be a label array");
  std::vector<std::string> labels;
  for (const json& label : states) {
    if (!label.is_string())
      throw std::invalid_argument("JSON key \"states\" must contain strings");
    labels.push_back(label.get<std::string>());
  }
  const json& kind = field(j, "kind");
  if (!kind.is_string() ||
      (kind.get<std::string>() != "perm" && kind.get<std::string>() != "rel"))
    throw std::invalid_argument(
        "JSON key \"kind\" must be \"perm\" or \"rel\"");
  const json& dynamics = field(j, "dynamics");
  if (!dynamics.is_array())
    throw std::invalid_argument("JSON key \"dynamics\" must be a pair array");
  std::vector<std::pair<State, State>> arrows;
  for (const json& pair : dynamics) {
    if (!pair.is_array() || pair.size() != 2 ||
        !pair[0].is_number_integer() || !pair[1].is_number_integer())
      throw std::invalid_argument(
          "JSON key \"dynamics\" must contain [from, to] integer pairs");
    arrows.emplace_back(pair[0].get<State>(), pair[1].get<State>());
  }
  const std::size_t n = labels.size();
  if (kind.get<std::string>() == "rel")
    return FiniteSystem::relation(n, std::move(arrows), std::move(labels));
  if (arrows.size() != n)
    throw std::invalid_argument(
        "permutation dynamics needs exactly one pair per state");
  std::vector<State> successor(n, -1);
  for (const auto& [from, to] : arrows) {
    if (from < 0 || static_cast<std::size_t>(from) >= n)
      throw std::invalid_argument("dynamics pair source out of range");
    if (successor[from] != -1)
      throw std::invalid_argument("two dynamics pairs share a source state");
    successor[from] = to;
  }
  return FiniteSystem::permutation(std::move(successor), std::move(labels));
}

json map_to_value(const EquivariantMap& map) {
  return json(map.assignment());
}

json partition_to_value(const tower::LevelPartition& p) {
  json blocks = json::array();
  for (const auto& block : p.blocks) blocks.push_back(json(block));
  return json{{"level", p.level}, {"blocks", std::move(blocks)}};
}

}  // namespace

std::string to_json(const FiniteSystem& sys) {
  return system_to_value(sys).dump();
}

FiniteSystem system_from_json(const std::string& text) {
  return system_from_value(parse(text));
}

std::string to_json(const tower::Tower& t) {
  json levels = json::array();
  for (const FiniteSystem& level : t.levels)
    levels.push_back(system_to_value(level));
  json bondings = json::array();
  for (const EquivariantMap& bonding : t.bondings)
    bondings.push_back(map_to_value(bonding));
  return json{{"levels", std::move(levels)},
              {"bondings", std::move(bondings)},
              {"cantor", t.cantor}}
      .dump();
}

tower::Tower tower_from_json(const std::string& text) {
  const json j = parse(text);
  const json& levels = field(j, "levels");
  if (!levels.is_array() || levels.empty())
    throw std::invalid_argument(
        "JSON key \"levels\" must be a nonempty system array");
  tower::Tower t;
  for (const json& level : levels) t.levels.push_back(system_from_value(level));
  const json& bondings = field(j, "bondings");
  if (!bondings.is_array() || bondings.size() + 1 != levels.size())
    throw std::invalid_argument(
        "JSON key \"bondings\" must hold one assignment per level pair");
  for (std::size_t i = 0; i < bondings.size(); ++i)
    t.bondings.emplace_back(t.levels[i + 1], t.levels[i],
                            state_array(bondings[i], "bondings"));
  if (const auto it = j.find("cantor"); it != j.end()) {
    if (!it->is_boolean())
      throw std::invalid_argument("JSON key \"cantor\" must be a boolean");
    t.cantor = it->get<bool>();
  }
  return t;
}

std::string to_json(const odometer::Supernatural& s) {
  json j = json::object();
  for (const auto& [prime, exponent] : s.exponents()) {
    if (exponent == odometer::Supernatural::kInfinity)
      j[std::to_string(prime)] = "inf";
    else
      j[std::to_string(prime)] = exponent;
  }
  return j.dump();
}

odometer::Supernatural supernatural_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object())
    throw std::invalid_argument("supernatural number must be a JSON object");
  odometer::Supernatural s;
  for (const auto& [key, value] : j.items()) {
    std::uint64_t prime = 0;
    std::size_t consumed = 0;
    try {
      prime = std::stoull(key, &consumed);
    } catch (const std::exception&) {
      throw std::invalid_argument("supernatural key \"" + key +
                                  "\" is not a prime");
    }
    if (consumed != key.size() || prime < 2 ||
        !odometer::factorize(prime).contains(prime))
      throw std::invalid_argument("supernatural key \"" + key +
                                  "\" is not a prime");
    if (value.is_string() && value.get<std::string>() == "inf")
      s.set_infinite(prime);
    else if (value.is_number_unsigned() && value.get<std::uint64_t>() > 0)
      s.add(prime, value.get<std::uint64_t>());
    else
      throw std::invalid_argument("supernatural exponent for \"" + key +
                                  "\" must be a positive integer or \"inf\"");
  }
  return s;
}

std::string to_json(const fraisse::AmalgamProblem& p) {
  return json{{"base", system_to_value(p.base)},
              {"left", system_to_value(p.left())},
              {"right", system_to_value(p.right())},
              {"f", map_to_value(p.f)},
              {"g", map_to_value(p.g)}}
      .dump();
}

fraisse::AmalgamProblem problem_from_json(const std::string& text) {
  const json j = parse(text);
  FiniteSystem base = system_from_value(field(j, "base"));
  FiniteSystem left = system_from_value(field(j, "left"));
  FiniteSystem right = system_from_value(field(j, "right"));
  EquivariantMap f(std::move(left), base, state_array(field(j, "f"), "f"));
  EquivariantMap g(std::move(right), base, state_array(field(j, "g"), "g"));
  return {std::move(base), std::move(f), std::move(g)};
}

std::string to_json(const fraisse::AmalgamSolution& s) {
  return json{{"apex", system_to_value(s.apex)},
              {"left", system_to_value(s.onto_left.target())},
              {"right", system_to_value(s.onto_right.target())},
              {"onto_left", map_to_value(s.onto_left)},
              {"onto_right", map_to_value(s.onto_right)}}
      .dump();
}

fraisse::AmalgamSolution solution_from_json(const std::string& text) {
  const json j = parse(text);
  FiniteSystem apex = system_from_value(field(j, "apex"));
  FiniteSystem left = system_from_value(field(j, "left"));
  FiniteSystem right = system_from_value(field(j, "right"));
  EquivariantMap onto_left(apex, std::move(left),
                           state_array(field(j, "onto_left"), "onto_left"));
  EquivariantMap onto_right(apex, std::move(right),
                            state_array(field(j, "onto_right"), "onto_right"));
  return {std::move(apex), std::move(onto_left), std::move(onto_right)};
}

std::string to_json(const tower::ClopenSet& u) {
  return json{{"level", u.level}, {"states", json(u.states)}}.dump();
}

std::string to_json(const tower::LevelPartition& p) {
  return partition_to_value(p).dump();
}

std::string to_json(const tower::CyclicChain& chain) {
  json partitions = json::array();
  for (const auto& p : chain.partitions)
    partitions.push_back(partition_to_value(p));
  return json{{"ratios", json(chain.ratios)},
              {"partitions", std::move(partitions)}}
      .dump();
}

std::string to_json(const tower::LiftResult& result) {
  json j;
  switch (result.status) {
    case tower::LiftStatus::found:
      j["status"] = "found";
      break;
    case tower::LiftStatus::absent_within_bounds:
      j["status"] = "absent_within_bounds";
      break;
    case tower::LiftStatus::precondition_failed:
      j["status"] = "precondition_failed";
      break;
  }
  if (!result.message.empty()) j["message"] = result.message;
  if (result.witness) {
    j["k"] = result.witness->k;
    j["tower_level"] = result.witness->tower_level;
    j["psi"] = map_to_value(result.witness->psi);
  }
  return j.dump();
}

std::string to_json(const fraisse::ChainCertificate& cert) {
  json samples = json::array();
  for (const spiral::Point& p : cert.wandering_samples)
    samples.push_back(spiral::to_string(p));
  return json{{"atoms_periodic", cert.atoms_periodic},
              {"spirals_wander", cert.spirals_wander},
              {"level_orders", json(cert.level_orders)},
              {"max_atom_periods", json(cert.max_atom_periods)},
              {"wandering_counts", json(cert.wandering_counts)},
              {"wandering_samples", std::move(samples)}}
      .dump();
}

LiftQueryData lift_query_from_json(const std::string& text) {
  const auto count = [](const json& v, const char* key) -> std::size_t {
    if (!v.is_number_unsigned())
      throw std::invalid_argument(std::string("JSON key \"") + key +
                                  "\" must be a nonnegative integer");
    return v.get<std::size_t>();
  };
  const json j = parse(text);
  LiftQueryData q;
  q.phi_level = count(field(j, "phi_level"), "phi_level");
  const json& spiral_level = field(j, "spiral_level");
  if (!spiral_level.is_number_integer())
    throw std::invalid_argument(
        "JSON key \"spiral_level\" must be an integer");
  q.spiral_level = spiral_level.get<int>();
  q.phi = state_array(field(j, "phi"), "phi");
  const json& refinement = field(j, "refinement");
  if (!refinement.is_array())
    throw std::invalid_argument(
        "JSON key \"refinement\" must be an array of blocks");
  for (const json& block : refinement)
    q.refinement.push_back(state_array(block, "refinement"));
  if (const auto it = j.find("max_k"); it != j.end())
    q.max_k = count(*it, "max_k");
  if (const auto it = j.find("max_level"); it != j.end())
    q.max_level = count(*it, "max_level");
  return q;
}

}  // namespace cantordyn::serialize
