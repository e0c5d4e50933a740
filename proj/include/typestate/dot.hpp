#pragma once

#include <string>
#include <string_view>

#include "typestate/automaton.hpp"

namespace typestate {

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// Graphviz rendering: circles for external states (double circle if final),
// diamonds for internal states, and a gray arrow from an invisible point
// into the initial state.
inline std::string doa_to_dot(const Doa& raw) {
  using detail::dot_quote;
  const Doa doa = with_implicit_end(raw);
  std::string out = "digraph doa {\n";
  out += "  rankdir=LR;\n";
  // '#' cannot occur in a state name, so the start node never collides.
  out += "  \"#start\" [shape=point, style=invis];\n";
  for (const auto& s : doa.external_states) {
    out += "  " + dot_quote(s) + " [shape=" +
           (doa.finals.contains(s) ? "doublecircle" : "circle") + "];\n";
  }
  for (const auto& t : doa.internal_states)
    out += "  " + dot_quote(t) + " [shape=diamond];\n";
  out += "  \"#start\" -> " + dot_quote(doa.initial) + " [color=gray];\n";
  for (const auto& e : doa.method_edges)
    out += "  " + dot_quote(e.from) + " -> " + dot_quote(e.to) +
           " [label=" + dot_quote(e.sig.str()) + "];\n";
  for (const auto& e : doa.result_edges)
    out += "  " + dot_quote(e.from) + " -> " + dot_quote(e.to) +
           " [label=" + dot_quote(e.label) + "];\n";
  out += "}\n";
  return out;
}

}  // namespace typestate
