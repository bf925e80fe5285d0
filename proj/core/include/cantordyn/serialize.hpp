#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantordyn/finite_system.hpp"
#include "cantordyn/fraisse.hpp"
#include "cantordyn/morphisms.hpp"
#include "cantordyn/odometer.hpp"
#include "cantordyn/tower.hpp"

/// JSON round-trips for the public value types.  All parsers throw
/// std::invalid_argument on malformed input, with the offending key in the
/// message.  Formats:
///   FiniteSystem    {"states": [labels], "kind": "perm"|"rel",
///                    "dynamics": [[i, j], ...]}          (pairs mean i -> j)
///   Tower           {"levels": [system, ...],
///                    "bondings": [[assignment], ...], "cantor": bool}
///   Supernatural    {"2": "inf", "3": 4}
///   AmalgamProblem  {"base": system, "left": system, "right": system,
///                    "f": [assignment], "g": [assignment]}
///   AmalgamSolution {"apex": system, "left": system, "right": system,
///                    "onto_left": [assignment], "onto_right": [assignment]}
namespace cantordyn::serialize {

std::string to_json(const FiniteSystem& sys);
FiniteSystem system_from_json(const std::string& text);

std::string to_json(const tower::Tower& t);
tower::Tower tower_from_json(const std::string& text);

std::string to_json(const odometer::Supernatural& s);
odometer::Supernatural supernatural_from_json(const std::string& text);

std::string to_json(const fraisse::AmalgamProblem& p);
fraisse::AmalgamProblem problem_from_json(const std::string& text);

std::string to_json(const fraisse::AmalgamSolution& s);
fraisse::AmalgamSolution solution_from_json(const std::string& text);

std::string to_json(const tower::ClopenSet& u);
std::string to_json(const tower::LevelPartition& p);
std::string to_json(const tower::CyclicChain& chain);
std::string to_json(const tower::LiftResult& result);
std::string to_json(const fraisse::ChainCertificate& cert);

/// Inputs of the lifting game, as read by `tower lift`:
///   {"phi_level": int, "spiral_level": int, "phi": [assignment],
///    "refinement": [[states], ...], "max_k": int, "max_level": int}
/// max_k/max_level are optional (command-line flags take precedence).
struct LiftQueryData {
  std::size_t phi_level = 0;
  int spiral_level = 1;
  std::vector<State> phi;
  std::vector<std::vector<State>> refinement;
  std::optional<std::size_t> max_k;
  std::optional<std::size_t> max_level;
};

LiftQueryData lift_query_from_json(const std::string& text);

}  // namespace cantordyn::serialize
