#pragma once

#include <optional>
#include <string>
#include <vector>

#include "typestate/diagnostic.hpp"
#include "typestate/method_sig.hpp"

namespace typestate {

// Where a node came from in the source text. Origins never take part in
// structural equality.
struct Origin {
  std::optional<SourcePos> pos;
  friend bool operator==(const Origin&, const Origin&) { return true; }
};

struct MethodTransition;
struct LabeledTarget;

struct StateBody {
  std::vector<MethodTransition> transitions;
  friend bool operator==(const StateBody&, const StateBody&);
};

// Where a method call (or a choice option) leads.
struct Target {
  enum class Kind { End, Named, Inline, Choice };

  Kind kind = Kind::End;
  std::string name;                    // Named
  StateBody body;                      // Inline
  std::vector<LabeledTarget> options;  // Choice
  Origin origin;

  static Target end(Origin o = {}) { return Target{Kind::End, {}, {}, {}, o}; }
  static Target named(std::string n, Origin o = {}) {
    return Target{Kind::Named, std::move(n), {}, {}, o};
  }
  static Target inline_state(StateBody b, Origin o = {}) {
    return Target{Kind::Inline, {}, std::move(b), {}, o};
  }
  static Target choice(std::vector<LabeledTarget> opts, Origin o = {}) {
    return Target{Kind::Choice, {}, {}, std::move(opts), o};
  }

  friend bool operator==(const Target&, const Target&);
};

struct LabeledTarget {
  std::string label;
  Target target;  // never a Choice
  Origin origin;
  friend bool operator==(const LabeledTarget&, const LabeledTarget&) = default;
};

struct MethodTransition {
  MethodSig sig;
  Target target;
  Origin origin;
  friend bool operator==(const MethodTransition&,
                         const MethodTransition&) = default;
};

inline bool operator==(const StateBody& a, const StateBody& b) {
  return a.transitions == b.transitions;
}

inline bool operator==(const Target& a, const Target& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Target::Kind::End: return true;
    case Target::Kind::Named: return a.name == b.name;
    case Target::Kind::Inline: return a.body == b.body;
    case Target::Kind::Choice: return a.options == b.options;
  }
  return false;
}

struct NamedStateDef {
  std::string name;
  StateBody body;
  Origin origin;
  friend bool operator==(const NamedStateDef&, const NamedStateDef&) = default;
};

// A parsed protocol. The first state, if any, is the initial one.
struct TypestateAst {
  std::string name;
  std::vector<NamedStateDef> states;
  friend bool operator==(const TypestateAst&, const TypestateAst&) = default;
};

}  // namespace typestate
