// Command-line front end for the cantordyn library.
//
// Exit codes, uniform across every subcommand:
//   0  success; a queried property holds / a witness was found
//   1  the queried property is false, or no witness exists within the bounds
//   2  usage errors, malformed input, or violated preconditions
//
// `--json` switches any leaf from human-readable lines to machine output.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cantordyn/dot.hpp"
#include "cantordyn/errors.hpp"
#include "cantordyn/finite_system.hpp"
#include "cantordyn/fraisse.hpp"
#include "cantordyn/morphisms.hpp"
#include "cantordyn/odometer.hpp"
#include "cantordyn/serialize.hpp"
#include "cantordyn/spiral.hpp"
#include "cantordyn/tower.hpp"

namespace {

using nlohmann::json;
using namespace cantordyn;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Print to stdout, or write to `path` when nonempty.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
  if (content.empty() || content.back() != '\n') out << '\n';
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text,
                                           const char* what) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw std::invalid_argument(std::string(what) +
                                  ": expected a comma-separated list of "
                                  "nonnegative integers, got '" +
                                  text + "'");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

// ---------------------------------------------------------------- spiral --

void add_spiral_commands(CLI::App& app, int& code) {
  auto* spiral_cmd =
      app.add_subcommand("spiral", "Spiral levels and their collapse maps");
  spiral_cmd->require_subcommand(1);

  {
    struct Opts {
      int n = 1;
      std::size_t cap = spiral::kDefaultLevelCap;
      bool as_json = false;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = spiral_cmd->add_subcommand(
        "build", "Build level n (6^n spirals glued along collapse fibers)");
    cmd->add_option("--n", o->n, "Level to build (>= 1)")->required();
    cmd->add_option("--max-states", o->cap, "State-count cap");
    cmd->add_flag("--json", o->as_json, "Emit the system as JSON");
    cmd->add_option("--out", o->out, "Write output to this file");
    cmd->callback([o, &code] {
      const spiral::Level level(o->n, o->cap);
      if (o->as_json) {
        emit(o->out, serialize::to_json(level.system()));
      } else {
        std::uint64_t copies = 1;
        for (int i = 0; i < o->n; ++i) copies *= 6;
        std::ostringstream line;
        line << "spiral level " << o->n << ": " << level.system().size()
             << " states = " << copies << " spirals x "
             << spiral::spiral_state_count(o->n) << " points";
        emit(o->out, line.str());
      }
      code = 0;
    });
  }

  {
    struct Opts {
      int n = 1;
      std::size_t cap = spiral::kDefaultLevelCap;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = spiral_cmd->add_subcommand(
        "verify",
        "Check that collapsing level n+1 to level n maps arrows to arrows");
    cmd->add_option("--n", o->n, "Lower level of the pair (>= 1)")->required();
    cmd->add_option("--max-states", o->cap, "State-count cap");
    cmd->callback([o, &code] {
      const bool ok = spiral::collapse_preserves_relation(o->n, o->cap);
      std::cout << (ok ? "xi morphism: OK" : "xi morphism: violated") << "\n";
      code = ok ? 0 : 1;
    });
  }

  {
    struct Opts {
      int n = 1;
      std::size_t cap = spiral::kDefaultLevelCap;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = spiral_cmd->add_subcommand(
        "wandering", "List the wandering points of level n");
    cmd->add_option("--n", o->n, "Level (>= 1)")->required();
    cmd->add_option("--max-states", o->cap, "State-count cap");
    cmd->add_flag("--json", o->as_json, "Emit counts and points as JSON");
    cmd->callback([o, &code] {
      const spiral::Level level(o->n, o->cap);
      const auto points = spiral::wandering_points(level);
      if (o->as_json) {
        json j;
        j["level"] = o->n;
        j["count"] = points.size();
        auto& arr = j["points"] = json::array();
        for (const auto& p : points) arr.push_back(spiral::to_string(p));
        emit("", j.dump(2));
      } else {
        std::cout << "wandering points: " << points.size() << "\n";
        if (!points.empty())
          std::cout << "sample: " << spiral::to_string(points.front()) << "\n";
      }
      code = points.empty() ? 1 : 0;
    });
  }

  {
    struct Opts {
      int n = 1;
      std::size_t cap = spiral::kDefaultLevelCap;
      std::string format = "dot";
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = spiral_cmd->add_subcommand(
        "export", "Export level n as DOT or JSON");
    cmd->add_option("--n", o->n, "Level (>= 1)")->required();
    cmd->add_option("--max-states", o->cap, "State-count cap");
    cmd->add_option("--format", o->format, "dot (default) or json")
        ->check(CLI::IsMember({"dot", "json"}));
    cmd->add_option("--out", o->out, "Write output to this file");
    cmd->callback([o, &code] {
      const spiral::Level level(o->n, o->cap);
      emit(o->out, o->format == "json" ? serialize::to_json(level.system())
                                       : dot::to_dot(level));
      code = 0;
    });
  }
}

// -------------------------------------------------------------- odometer --

void add_odometer_commands(CLI::App& app, int& code) {
  auto* odo_cmd = app.add_subcommand(
      "odometer", "Adding machines over eventually periodic bases");
  odo_cmd->require_subcommand(1);

  {
    struct Opts {
      std::string spec;
      std::string digits;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = odo_cmd->add_subcommand(
        "step", "Add one with carry to a digit vector");
    cmd->add_option("--spec", o->spec, "Base spec, e.g. ':2' or '6:5'")
        ->required();
    cmd->add_option("--digits", o->digits, "Comma-separated digits")
        ->required();
    cmd->add_flag("--json", o->as_json, "Emit the next digits as JSON");
    cmd->callback([o, &code] {
      const auto spec = odometer::Spec::parse(o->spec);
      const auto digits = parse_uint_list(o->digits, "--digits");
      if (digits.empty())
        throw std::invalid_argument("--digits: need at least one digit");
      const auto next = odometer::step(spec, digits);
      if (o->as_json) {
        json j;
        j["digits"] = next;
        emit("", j.dump(2));
      } else {
        std::cout << join(next) << "\n";
      }
      code = 0;
    });
  }

  {
    struct Opts {
      std::string spec;
      std::size_t n = 1;
      std::uint64_t cap = odometer::kDefaultTruncationCap;
      bool as_json = false;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = odo_cmd->add_subcommand(
        "truncate", "Build the level-n truncation (a single cycle)");
    cmd->add_option("--spec", o->spec, "Base spec")->required();
    cmd->add_option("--n", o->n, "Truncation level (>= 1)")->required();
    cmd->add_option("--max-states", o->cap, "State-count cap");
    cmd->add_flag("--json", o->as_json, "Emit the system as JSON");
    cmd->add_option("--out", o->out, "Write output to this file");
    cmd->callback([o, &code] {
      const auto spec = odometer::Spec::parse(o->spec);
      const auto trunc = odometer::truncation(spec, o->n, o->cap);
      if (o->as_json) {
        emit(o->out, serialize::to_json(trunc.system));
      } else {
        std::ostringstream line;
        line << "truncation level " << trunc.level << ": cycle of length "
             << trunc.system.size();
        emit(o->out, line.str());
      }
      code = 0;
    });
  }

  {
    struct Opts {
      std::string a;
      std::string b;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = odo_cmd->add_subcommand(
        "conj", "Decide conjugacy of two odometers by their invariants");
    cmd->add_option("--a", o->a, "First base spec")->required();
    cmd->add_option("--b", o->b, "Second base spec")->required();
    cmd->add_flag("--json", o->as_json, "Emit invariants and verdict as JSON");
    cmd->callback([o, &code] {
      const auto a = odometer::Spec::parse(o->a);
      const auto b = odometer::Spec::parse(o->b);
      const auto sa = odometer::supernatural(a);
      const auto sb = odometer::supernatural(b);
      const bool conj = (sa == sb);
      if (o->as_json) {
        json j;
        j["a"] = json::parse(serialize::to_json(sa));
        j["b"] = json::parse(serialize::to_json(sb));
        j["conjugate"] = conj;
        emit("", j.dump(2));
      } else {
        std::cout << "a = " << sa.to_string() << "\n";
        std::cout << "b = " << sb.to_string() << "\n";
        std::cout << (conj ? "conjugate" : "not conjugate") << "\n";
      }
      code = conj ? 0 : 1;
    });
  }

  {
    struct Opts {
      std::string spec;
      std::uint64_t k = 2;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = odo_cmd->add_subcommand(
        "phi",
        "Does the odometer admit a clopen partition cycled in k blocks?");
    cmd->add_option("--spec", o->spec, "Base spec")->required();
    cmd->add_option("--k", o->k, "Number of blocks (>= 1)")->required();
    cmd->add_flag("--json", o->as_json, "Emit verdict and witness level");
    cmd->callback([o, &code] {
      const auto spec = odometer::Spec::parse(o->spec);
      if (o->k == 0) throw std::invalid_argument("--k: must be >= 1");
      const auto level = odometer::admits_cyclic_partition(spec, o->k);
      if (o->as_json) {
        json j;
        j["k"] = o->k;
        j["holds"] = level.has_value();
        if (level) j["level"] = *level;
        emit("", j.dump(2));
      } else if (level) {
        std::cout << "phi_" << o->k << " holds at truncation level " << *level
                  << "\n";
      } else {
        std::cout << "phi_" << o->k
                  << " fails: no truncation carries a cyclic " << o->k
                  << "-partition\n";
      }
      code = level ? 0 : 1;
    });
  }

  {
    struct Opts {
      std::string spec;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = odo_cmd->add_subcommand(
        "swap",
        "Is some clopen set carried exactly onto its complement?");
    cmd->add_option("--spec", o->spec, "Base spec")->required();
    cmd->add_flag("--json", o->as_json, "Emit verdict and witness level");
    cmd->callback([o, &code] {
      const auto spec = odometer::Spec::parse(o->spec);
      const auto level = odometer::admits_cyclic_partition(spec, 2);
      if (o->as_json) {
        json j;
        j["holds"] = level.has_value();
        if (level) j["level"] = *level;
        emit("", j.dump(2));
      } else if (level) {
        std::cout << "swap holds: a clopen set is carried onto its "
                     "complement (truncation level "
                  << *level << ")\n";
      } else {
        std::cout << "swap fails: no clopen set is carried exactly onto its "
                     "complement\n";
      }
      code = level ? 0 : 1;
    });
  }
}

// ----------------------------------------------------------------- tower --

void add_tower_commands(CLI::App& app, int& code) {
  auto* tower_cmd = app.add_subcommand(
      "tower", "Towers of finite systems with onto bonding maps");
  tower_cmd->require_subcommand(1);

  {
    struct Opts {
      std::string path;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = tower_cmd->add_subcommand(
        "validate", "Check bonding shapes, equivariance and surjectivity");
    cmd->add_option("--tower", o->path, "Tower JSON file")->required();
    cmd->add_flag("--json", o->as_json, "Emit the report as JSON");
    cmd->callback([o, &code] {
      const auto t = serialize::tower_from_json(read_file(o->path));
      const auto report = tower::validate(t);
      if (o->as_json) {
        json j;
        j["valid"] = report.valid;
        j["levels"] = t.levels.size();
        if (!report.valid) {
          j["message"] = report.message;
          if (report.index) j["index"] = *report.index;
        }
        emit("", j.dump(2));
      } else if (report.valid) {
        std::cout << "valid tower: " << t.levels.size() << " levels, top size "
                  << t.levels.back().size() << "\n";
      } else {
        std::cout << "invalid tower: " << report.message << "\n";
      }
      code = report.valid ? 0 : 1;
    });
  }

  {
    struct Opts {
      std::string tower_path;
      std::string query_path;
      std::size_t max_k = 0;      // 0 = take from the query file / default
      std::size_t max_level = 0;  // likewise
      std::size_t cap = spiral::kDefaultLevelCap;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = tower_cmd->add_subcommand(
        "lift",
        "Search for a lift of a map onto spiral level n through deeper "
        "tower levels and spiral levels n+1..n+k");
    cmd->add_option("--tower", o->tower_path, "Tower JSON file")->required();
    cmd->add_option("--query", o->query_path, "Lift query JSON file")
        ->required();
    cmd->add_option("--max-k", o->max_k,
                    "Spiral levels to try above n (overrides the query)");
    cmd->add_option("--max-level", o->max_level,
                    "Deepest tower level to try (overrides the query)");
    cmd->add_option("--max-states", o->cap, "Spiral state-count cap");
    cmd->add_flag("--json", o->as_json, "Emit the result as JSON");
    cmd->callback([o, &code] {
      const auto t = serialize::tower_from_json(read_file(o->tower_path));
      const auto q = serialize::lift_query_from_json(read_file(o->query_path));
      if (q.phi_level >= t.levels.size())
        throw std::invalid_argument("lift query: phi_level " +
                                    std::to_string(q.phi_level) +
                                    " is outside the tower");
      const spiral::Level base(q.spiral_level, o->cap);
      const EquivariantMap phi(t.levels[q.phi_level], base.system(), q.phi);
      const tower::LevelPartition refinement{q.phi_level, q.refinement};
      const std::size_t max_k =
          o->max_k ? o->max_k : q.max_k.value_or(1);
      const std::size_t max_level =
          o->max_level ? o->max_level
                       : q.max_level.value_or(t.levels.size() - 1);
      const auto result = tower::find_lift(t, q.phi_level, q.spiral_level, phi,
                                           refinement, max_k, max_level,
                                           o->cap);
      if (o->as_json) {
        emit("", serialize::to_json(result));
      } else {
        switch (result.status) {
          case tower::LiftStatus::found:
            std::cout << "lift found: spiral level "
                      << (q.spiral_level +
                          static_cast<int>(result.witness->k))
                      << " (k=" << result.witness->k << "), tower level "
                      << result.witness->tower_level << "\n";
            break;
          case tower::LiftStatus::absent_within_bounds:
            std::cout << "no lift within bounds: " << result.message << "\n";
            break;
          case tower::LiftStatus::precondition_failed:
            std::cout << "query rejected: " << result.message << "\n";
            break;
        }
      }
      switch (result.status) {
        case tower::LiftStatus::found: code = 0; break;
        case tower::LiftStatus::absent_within_bounds: code = 1; break;
        case tower::LiftStatus::precondition_failed: code = 2; break;
      }
    });
  }

  {
    struct Opts {
      std::string path;
      std::size_t depth = 1;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = tower_cmd->add_subcommand(
        "star",
        "Search for a depth-d chain of cyclic partitions, each refining "
        "the previous");
    cmd->add_option("--tower", o->path, "Tower JSON file")->required();
    cmd->add_option("--depth", o->depth, "Chain length (>= 1)")->required();
    cmd->add_flag("--json", o->as_json, "Emit ratios and partitions as JSON");
    cmd->callback([o, &code] {
      const auto t = serialize::tower_from_json(read_file(o->path));
      const auto chain = tower::cyclic_refinement_chain(t, o->depth);
      if (o->as_json) {
        if (chain) {
          emit("", serialize::to_json(*chain));
        } else {
          json j;
          j["found"] = false;
          j["depth"] = o->depth;
          emit("", j.dump(2));
        }
      } else if (chain) {
        std::vector<std::uint64_t> blocks;
        std::uint64_t m = 1;
        for (auto r : chain->ratios) blocks.push_back(m *= r);
        std::cout << "cyclic refinement chain of depth " << o->depth
                  << ": ratios " << join(chain->ratios) << " (block counts "
                  << join(blocks) << ")\n";
      } else {
        std::cout << "no cyclic refinement chain of depth " << o->depth
                  << " in this tower\n";
      }
      code = chain ? 0 : 1;
    });
  }

  {
    struct Opts {
      std::string path;
      std::size_t depth = 0;  // 0 = all levels
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = tower_cmd->add_subcommand(
        "wandering",
        "Search the first levels for a clopen set that never returns");
    cmd->add_option("--tower", o->path, "Tower JSON file")->required();
    cmd->add_option("--depth", o->depth, "Levels to search (default: all)");
    cmd->add_flag("--json", o->as_json, "Emit the witness as JSON");
    cmd->callback([o, &code] {
      const auto t = serialize::tower_from_json(read_file(o->path));
      const std::size_t depth = o->depth ? o->depth : t.levels.size();
      const auto witness = tower::find_wandering_clopen(t, depth);
      if (o->as_json) {
        if (witness) {
          emit("", serialize::to_json(*witness));
        } else {
          json j;
          j["found"] = false;
          j["depth"] = depth;
          emit("", j.dump(2));
        }
      } else if (witness) {
        std::cout << "wandering clopen at level " << witness->level
                  << ": state " << witness->states.front() << " ("
                  << t.levels[witness->level].label(witness->states.front())
                  << ")\n";
      } else {
        std::cout << "no wandering clopen within the first " << depth
                  << " levels\n";
      }
      code = witness ? 0 : 1;
    });
  }
}

// --------------------------------------------------------------- fraisse --

void add_fraisse_commands(CLI::App& app, int& code) {
  auto* fraisse_cmd = app.add_subcommand(
      "fraisse", "Joint embedding, amalgamation and the generic chain");
  fraisse_cmd->require_subcommand(1);

  {
    struct Opts {
      std::string x_path;
      std::string y_path;
      bool as_json = false;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = fraisse_cmd->add_subcommand(
        "jep", "Joint embedding of two permutation systems via their product");
    cmd->add_option("--x", o->x_path, "First system JSON file")->required();
    cmd->add_option("--y", o->y_path, "Second system JSON file")->required();
    cmd->add_flag("--json", o->as_json, "Emit apex and projections as JSON");
    cmd->add_option("--out", o->out, "Write output to this file");
    cmd->callback([o, &code] {
      const auto x = serialize::system_from_json(read_file(o->x_path));
      const auto y = serialize::system_from_json(read_file(o->y_path));
      const auto je = fraisse::joint_embed(x, y);
      if (o->as_json || !o->out.empty()) {
        json j;
        j["apex"] = json::parse(serialize::to_json(je.apex));
        j["onto_first"] = je.onto_first.assignment();
        j["onto_second"] = je.onto_second.assignment();
        emit(o->out, j.dump(2));
      } else {
        std::cout << "joint embedding: apex " << je.apex.size()
                  << " states, both projections onto and arrow-preserving\n";
      }
      code = 0;
    });
  }

  {
    struct Opts {
      std::string problem_path;
      bool as_json = false;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = fraisse_cmd->add_subcommand(
        "amalgamate",
        "Complete a span of onto maps to a commuting square");
    cmd->add_option("--problem", o->problem_path, "Problem JSON file")
        ->required();
    cmd->add_flag("--json", o->as_json, "Emit the solution as JSON");
    cmd->add_option("--out", o->out, "Write the solution to this file");
    cmd->callback([o, &code] {
      const auto p = serialize::problem_from_json(read_file(o->problem_path));
      const auto s = fraisse::amalgamate(p);
      if (!fraisse::verify_amalgam(p, s))
        throw std::logic_error("amalgam failed its own verification");
      if (o->as_json || !o->out.empty()) {
        emit(o->out, serialize::to_json(s));
      } else {
        std::cout << "amalgam apex: " << s.apex.size()
                  << " states (square verified)\n";
      }
      code = 0;
    });
  }

  {
    struct Opts {
      std::string schedule;
      std::size_t depth = 1;
      std::size_t cap = 100000;
      bool as_json = false;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = fraisse_cmd->add_subcommand(
        "chain",
        "Build the deterministic chain realizing every scheduled cycle type");
    cmd->add_option("--schedule", o->schedule,
                    "Comma-separated nondecreasing size bounds, e.g. 2,3,4")
        ->required();
    cmd->add_option("--depth", o->depth, "Number of levels (>= 1)")
        ->required();
    cmd->add_option("--max-states", o->cap, "State-count cap");
    cmd->add_flag("--json", o->as_json, "Emit the tower as JSON");
    cmd->add_option("--out", o->out, "Write the tower to this file");
    cmd->callback([o, &code] {
      const auto schedule_u64 = parse_uint_list(o->schedule, "--schedule");
      std::vector<std::size_t> schedule(schedule_u64.begin(),
                                        schedule_u64.end());
      const auto chain = fraisse::generic_chain(schedule, o->depth, o->cap);
      if (o->as_json || !o->out.empty()) {
        emit(o->out, serialize::to_json(chain));
      } else {
        std::vector<std::uint64_t> sizes;
        for (const auto& level : chain.levels) sizes.push_back(level.size());
        std::cout << "chain: " << chain.levels.size() << " levels, sizes "
                  << join(sizes) << "\n";
      }
      code = 0;
    });
  }

  {
    struct Opts {
      std::string chain_path;
      int spiral_depth = 1;
      std::size_t cap = spiral::kDefaultLevelCap;
      bool as_json = false;
    };
    auto o = std::make_shared<Opts>();
    auto* cmd = fraisse_cmd->add_subcommand(
        "certify",
        "Check that every chain atom is periodic while spiral levels wander");
    cmd->add_option("--chain", o->chain_path, "Chain tower JSON file")
        ->required();
    cmd->add_option("--spiral-depth", o->spiral_depth,
                    "Spiral levels to test (>= 1)")
        ->required();
    cmd->add_option("--max-states", o->cap, "Spiral state-count cap");
    cmd->add_flag("--json", o->as_json, "Emit the certificate as JSON");
    cmd->callback([o, &code] {
      const auto chain = serialize::tower_from_json(read_file(o->chain_path));
      const auto cert = fraisse::certify_chain(chain, o->spiral_depth, o->cap);
      if (o->as_json) {
        emit("", serialize::to_json(cert));
      } else {
        std::cout << "atoms periodic: " << (cert.atoms_periodic ? "yes" : "no")
                  << " (periods divide level orders)\n";
        std::vector<std::uint64_t> counts(cert.wandering_counts.begin(),
                                          cert.wandering_counts.end());
        std::cout << "spirals wander: " << (cert.spirals_wander ? "yes" : "no")
                  << " (counts " << join(counts) << ")\n";
      }
      code = (cert.atoms_periodic && cert.spirals_wander) ? 0 : 1;
    });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cantordyn: finite approximations of Cantor dynamical systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  int code = 0;
  add_spiral_commands(app, code);
  add_odometer_commands(app, code);
  add_tower_commands(app, code);
  add_fraisse_commands(app, code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help and --version exit 0
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cantordyn::resource_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
