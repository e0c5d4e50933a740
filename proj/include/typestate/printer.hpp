#pragma once

#include <string>

#include "typestate/ast.hpp"

namespace typestate {

namespace detail {

inline void render_body(std::string& out, const StateBody& body);

inline void render_target(std::string& out, const Target& t) {
  switch (t.kind) {
    case Target::Kind::End: out += "end"; break;
    case Target::Kind::Named: out += t.name; break;
    case Target::Kind::Inline: render_body(out, t.body); break;
    case Target::Kind::Choice:
      out += "<";
      for (std::size_t i = 0; i < t.options.size(); ++i) {
        if (i) out += ", ";
        out += t.options[i].label;
        out += ": ";
        render_target(out, t.options[i].target);
      }
      out += ">";
      break;
  }
}

inline void render_body(std::string& out, const StateBody& body) {
  if (body.transitions.empty()) {
    out += "{}";
    return;
  }
  out += "{ ";
  for (std::size_t i = 0; i < body.transitions.size(); ++i) {
    if (i) out += ", ";
    const auto& m = body.transitions[i];
    out += m.sig.str();
    out += ": ";
    render_target(out, m.target);
  }
  out += " }";
}

}  // namespace detail

// Canonical text: one state per line, four-space indent, no trailing newline.
inline std::string render(const TypestateAst& ast) {
  std::string out = "typestate " + ast.name + " {\n";
  for (const auto& s : ast.states) {
    out += "    ";
    out += s.name;
    out += " = ";
    detail::render_body(out, s.body);
    out += "\n";
  }
  out += "}";
  return out;
}

}  // namespace typestate
