#pragma once

#include <set>
#include <string>

#include "typestate/ast.hpp"
#include "typestate/ast_check.hpp"
#include "typestate/automaton.hpp"

namespace typestate {

enum class FreshKind { Inner, Choice };

// Names already in use in one translation, plus fresh-name generation.
class NameRegistry {
 public:
  void claim(const std::string& name) { claimed_.insert(name); }
  bool contains(const std::string& name) const {
    return claimed_.count(name) != 0;
  }
  const std::set<std::string>& claimed() const { return claimed_; }

  // `_S<k>` for inline states, `_C<k>` for choices; smallest k >= 1 not yet
  // claimed. The result is claimed before returning.
  std::string fresh(FreshKind kind) {
    auto& k = kind == FreshKind::Inner ? next_inner_ : next_choice_;
    const char* prefix = kind == FreshKind::Inner ? "_S" : "_C";
    std::string name;
    do {
      name = prefix + std::to_string(k++);
    } while (contains(name));
    claim(name);
    return name;
  }

 private:
  std::set<std::string> claimed_;
  // Claimed names only grow, so every k below the counter is taken.
  std::size_t next_inner_ = 1;
  std::size_t next_choice_ = 1;
};

inline std::string fresh_name(NameRegistry& reg, FreshKind kind) {
  return reg.fresh(kind);
}

namespace detail {

// Structural recursion over the grammar. Each case yields a small automaton
// and the pieces are combined with union_of, left operand first.
class Compiler {
 public:
  explicit Compiler(const TypestateAst& ast) : ast_(ast) {
    registry_.claim(std::string(kEndState));
    for (const auto& s : ast.states) registry_.claim(s.name);
  }

  Doa protocol() {
    Doa result = Doa::end_only();
    bool first = true;
    for (const auto& s : ast_.states) {
      Doa part = state(s.name, s.body);
      result = first ? std::move(part) : unite(result, part);
      first = false;
    }
    if (!first) result = unite(result, Doa::end_only());
    return result;
  }

 private:
  static Doa unite(const Doa& a, const Doa& b) {
    auto u = union_of(a, b);
    if (!u)
      throw std::logic_error("compile: union conflict: " +
                             u.diagnostics().front().message);
    return std::move(u).value();
  }

  static bool is_end(const Target& t) {
    return t.kind == Target::Kind::End ||
           (t.kind == Target::Kind::Inline && t.body.transitions.empty());
  }

  // Compile(start, S)
  Doa state(const std::string& start, const StateBody& body) {
    if (body.transitions.empty()) {
      Doa d;
      d.external_states.insert(start);
      d.initial = start;
      d.finals.insert(start);
      return d;
    }
    Doa result = transition(start, body.transitions.front());
    for (std::size_t i = 1; i < body.transitions.size(); ++i)
      result = unite(result, transition(start, body.transitions[i]));
    return result;
  }

  // Compile(start, type m(A), W)
  Doa transition(const std::string& start, const MethodTransition& m) {
    const Target& w = m.target;
    if (is_end(w)) return method_edge(start, m.sig, std::string(kEndState), true);
    switch (w.kind) {
      case Target::Kind::Named:
        return method_edge(start, m.sig, w.name, false);
      case Target::Kind::Inline: {
        auto inner = registry_.fresh(FreshKind::Inner);
        Doa edge = method_edge(start, m.sig, inner, false);
        return unite(edge, state(inner, w.body));
      }
      case Target::Kind::Choice: {
        auto choice = registry_.fresh(FreshKind::Choice);
        Doa d;
        d.external_states.insert(start);
        d.internal_states.insert(choice);
        d.methods.insert(m.sig);
        d.initial = start;
        d.method_edges.insert({start, m.sig, choice});
        for (const auto& opt : w.options) d = unite(d, option(choice, opt));
        return d;
      }
      case Target::Kind::End: break;
    }
    throw std::logic_error("compile: unreachable target kind");
  }

  static Doa method_edge(const std::string& start, const MethodSig& sig,
                         const std::string& next, bool final_next) {
    Doa d;
    d.external_states.insert(start);
    d.external_states.insert(next);
    d.methods.insert(sig);
    d.initial = start;
    if (final_next) d.finals.insert(next);
    d.method_edges.insert({start, sig, next});
    return d;
  }

  // Compile(choice, label, LT). These pieces have no initial state of their
  // own; union_of keeps the left operand's.
  Doa option(const std::string& choice, const LabeledTarget& opt) {
    const Target& lt = opt.target;
    if (is_end(lt)) return result_edge(choice, opt.label, std::string(kEndState), true);
    if (lt.kind == Target::Kind::Named)
      return result_edge(choice, opt.label, lt.name, false);
    auto inner = registry_.fresh(FreshKind::Inner);
    return unite(result_edge(choice, opt.label, inner, false),
                 state(inner, lt.body));
  }

  static Doa result_edge(const std::string& choice, const std::string& label,
                         const std::string& next, bool final_next) {
    Doa d;
    d.external_states.insert(next);
    d.internal_states.insert(choice);
    d.labels.insert(label);
    if (final_next) d.finals.insert(next);
    d.result_edges.insert({choice, label, next});
    return d;
  }

  const TypestateAst& ast_;
  NameRegistry registry_;
};

}  // namespace detail

// Translates a valid protocol into its automaton. Throws PreconditionError if
// the AST does not pass validate_ast.
inline Doa compile(const TypestateAst& ast) {
  auto diags = validate_ast(ast);
  if (has_errors(diags))
    throw PreconditionError("compile: invalid protocol (" + diags.front().code +
                            ": " + diags.front().message + ")");
  return detail::Compiler(ast).protocol();
}

}  // namespace typestate
