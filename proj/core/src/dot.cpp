#include "cantordyn/dot.hpp"

namespace cantordyn::dot {

namespace {

std::string escaped(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void append_edges(const FiniteSystem& sys, std::string& out) {
  for (const auto& [from, to] : sys.arrows())
    out += "  " + std::to_string(from) + " -> " + std::to_string(to) + ";\n";
}

}  // namespace

std::string to_dot(const FiniteSystem& sys, const std::string& graph_name) {
  std::string out = "digraph \"" + escaped(graph_name) + "\" {\n";
  for (std::size_t s = 0; s < sys.size(); ++s)
    out += "  " + std::to_string(s) + " [label=\"" +
           escaped(sys.label(static_cast<State>(s))) + "\"];\n";
  append_edges(sys, out);
  out += "}\n";
  return out;
}

std::string to_dot(const spiral::Level& level) {
  const FiniteSystem& sys = level.system();
  std::string out =
      "digraph \"spiral_level_" + std::to_string(level.level()) + "\" {\n";
  for (std::size_t s = 0; s < sys.size(); ++s) {
    const spiral::Point p = level.point_of(static_cast<State>(s));
    const char* color = p.side == spiral::Side::left     ? "blue"
                        : p.side == spiral::Side::middle ? "gray"
                                                         : "red";
    out += "  " + std::to_string(s) + " [label=\"" +
           escaped(sys.label(static_cast<State>(s))) + "\", color=" + color +
           "];\n";
  }
  append_edges(sys, out);
  out += "}\n";
  return out;
}

}  // namespace cantordyn::dot
