#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "typestate/diagnostic.hpp"
#include "typestate/lexer.hpp"
#include "typestate/method_sig.hpp"
#include "typestate/ordered_set.hpp"
#include "typestate/result.hpp"

namespace typestate {

inline constexpr std::string_view kEndState = "end";

// Method-call transition: external state --sig--> external or internal state.
struct MethodEdge {
  std::string from;
  MethodSig sig;
  std::string to;
  friend auto operator<=>(const MethodEdge&, const MethodEdge&) = default;
  friend bool operator==(const MethodEdge&, const MethodEdge&) = default;
};

// Result transition: internal state --label--> external state.
struct ResultEdge {
  std::string from;
  std::string label;
  std::string to;
  friend auto operator<=>(const ResultEdge&, const ResultEdge&) = default;
  friend bool operator==(const ResultEdge&, const ResultEdge&) = default;
};

// Deterministic object automaton <S, T, M, L, s, F, D, E>. All sets keep
// insertion order for presentation; equality is set equality.
struct Doa {
  OrderedSet<std::string> external_states;  // S
  OrderedSet<std::string> internal_states;  // T
  OrderedSet<MethodSig> methods;            // M
  OrderedSet<std::string> labels;           // L
  std::string initial;                      // s
  OrderedSet<std::string> finals;           // F
  OrderedSet<MethodEdge> method_edges;      // D
  OrderedSet<ResultEdge> result_edges;      // E

  friend bool operator==(const Doa&, const Doa&) = default;

  static Doa end_only() {
    Doa d;
    d.external_states.insert(std::string(kEndState));
    d.initial = kEndState;
    d.finals.insert(std::string(kEndState));
    return d;
  }

  bool is_external(const std::string& s) const {
    return external_states.contains(s);
  }
  bool is_internal(const std::string& s) const {
    return internal_states.contains(s);
  }
  bool has_state(const std::string& s) const {
    return is_external(s) || is_internal(s);
  }

  bool has_outgoing(const std::string& s) const {
    auto& idx = method_edges.sorted();
    auto it = idx.lower_bound(MethodEdge{s, {}, {}});
    if (it != idx.end() && it->from == s) return true;
    auto& ridx = result_edges.sorted();
    auto rit = ridx.lower_bound(ResultEdge{s, {}, {}});
    return rit != ridx.end() && rit->from == s;
  }

  // A final state with no outgoing transitions.
  bool is_final_sink(const std::string& s) const {
    return finals.contains(s) && !has_outgoing(s);
  }
};

struct Label {
  std::string name;
  friend auto operator<=>(const Label&, const Label&) = default;
  friend bool operator==(const Label&, const Label&) = default;
};

using Symbol = std::variant<MethodSig, Label>;
using Word = std::vector<Symbol>;

inline std::string to_string(const Symbol& s) {
  if (auto m = std::get_if<MethodSig>(&s)) return m->str();
  return std::get<Label>(s).name;
}

inline std::string to_string(const Word& w, std::string_view sep = "·") {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += sep;
    out += to_string(w[i]);
  }
  return out;
}

// delta for methods from external states, tau for labels from internal ones.
// Returns nullopt when no transition exists or the symbol kind does not match
// the state kind.
inline std::optional<std::string> step(const Doa& doa, const std::string& from,
                                       const Symbol& symbol) {
  if (!doa.has_state(from))
    throw PreconditionError("step: unknown state '" + from + "'");
  if (auto m = std::get_if<MethodSig>(&symbol)) {
    if (!doa.is_external(from)) return std::nullopt;
    auto& idx = doa.method_edges.sorted();
    auto it = idx.lower_bound(MethodEdge{from, *m, {}});
    if (it != idx.end() && it->from == from && it->sig == *m) return it->to;
    return std::nullopt;
  }
  const auto& label = std::get<Label>(symbol).name;
  if (!doa.is_internal(from)) return std::nullopt;
  auto& idx = doa.result_edges.sorted();
  auto it = idx.lower_bound(ResultEdge{from, label, {}});
  if (it != idx.end() && it->from == from && it->label == label) return it->to;
  return std::nullopt;
}

struct Reached {
  std::string state;
  friend bool operator==(const Reached&, const Reached&) = default;
};
struct Stuck {
  std::size_t after = 0;  // symbols consumed before the failing one
  std::string at;
  friend bool operator==(const Stuck&, const Stuck&) = default;
};
using RunOutcome = std::variant<Reached, Stuck>;

// Multi-step transition function, totalized: reports where it got stuck.
inline RunOutcome run(const Doa& doa, const std::string& from, const Word& w) {
  if (!doa.has_state(from))
    throw PreconditionError("run: unknown state '" + from + "'");
  std::string at = from;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto next = step(doa, at, w[i]);
    if (!next) return Stuck{i, at};
    if (!doa.has_state(*next)) return Stuck{i, at};
    at = std::move(*next);
  }
  return Reached{at};
}

// Componentwise union; the initial state is taken from `a`. States with the
// same name are identified.
inline Result<Doa> union_of(const Doa& a, const Doa& b) {
  Doa u = a;
  u.external_states.insert_all(b.external_states);
  u.internal_states.insert_all(b.internal_states);
  u.methods.insert_all(b.methods);
  u.labels.insert_all(b.labels);
  u.finals.insert_all(b.finals);
  u.method_edges.insert_all(b.method_edges);
  u.result_edges.insert_all(b.result_edges);

  std::vector<Diagnostic> diags;
  for (const auto& s : u.external_states) {
    if (u.internal_states.contains(s))
      diags.push_back(error(code::UnionConflict,
                            "state '" + s + "' is both external and internal",
                            std::nullopt, "state:" + s));
  }
  const MethodEdge* prev = nullptr;
  for (const auto& e : u.method_edges.sorted()) {
    if (prev && prev->from == e.from && prev->sig == e.sig)
      diags.push_back(error(code::UnionConflict,
                            "state '" + e.from + "' has two transitions on '" +
                                e.sig.str() + "'",
                            std::nullopt, "state:" + e.from));
    prev = &e;
  }
  const ResultEdge* rprev = nullptr;
  for (const auto& e : u.result_edges.sorted()) {
    if (rprev && rprev->from == e.from && rprev->label == e.label)
      diags.push_back(error(code::UnionConflict,
                            "choice '" + e.from + "' has two options labelled '" +
                                e.label + "'",
                            std::nullopt, "state:" + e.from));
    rprev = &e;
  }
  if (!diags.empty()) return Result<Doa>::failure(std::move(diags));
  return u;
}

// States reachable from the initial one along method and result edges.
inline std::set<std::string> reachable(const Doa& doa) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& e : doa.method_edges) succ[e.from].push_back(e.to);
  for (const auto& e : doa.result_edges) succ[e.from].push_back(e.to);

  std::set<std::string> seen;
  if (doa.initial.empty()) return seen;
  std::deque<std::string> queue{doa.initial};
  seen.insert(doa.initial);
  while (!queue.empty()) {
    auto x = std::move(queue.front());
    queue.pop_front();
    auto it = succ.find(x);
    if (it == succ.end()) continue;
    for (const auto& y : it->second)
      if (seen.insert(y).second) queue.push_back(y);
  }
  return seen;
}

// The `end` state is predefined in every protocol. An automaton that mentions
// `end` without declaring it gets it added as an external final state.
inline Doa with_implicit_end(Doa doa) {
  const std::string end(kEndState);
  if (doa.has_state(end)) return doa;
  bool mentioned = doa.initial == end || doa.finals.contains(end);
  for (const auto& e : doa.method_edges)
    mentioned = mentioned || e.from == end || e.to == end;
  for (const auto& e : doa.result_edges)
    mentioned = mentioned || e.from == end || e.to == end;
  if (mentioned) {
    doa.external_states.insert(end);
    doa.finals.insert(end);
  }
  return doa;
}

// Strictness of a final state that still offers transitions: tolerated in
// general, fatal when the automaton is about to become protocol text.
enum class DoaCheck { General, Decompile };

// Well-formedness check for possibly hand-written automata. Every problem is
// reported; warnings do not block use.
inline std::vector<Diagnostic> validate_doa(const Doa& raw,
                                            DoaCheck mode = DoaCheck::General) {
  const Doa doa = with_implicit_end(raw);
  std::vector<Diagnostic> out;
  auto state_ref = [](const std::string& s) { return "state:" + s; };

  for (const auto& s : doa.external_states) {
    if (s != kEndState && !is_identifier(s))
      out.push_back(error(code::InvalidName,
                          "'" + s + "' is not a valid state name", std::nullopt,
                          state_ref(s)));
    if (doa.is_internal(s))
      out.push_back(error(code::MalformedDoa,
                          "state '" + s + "' is both external and internal",
                          std::nullopt, state_ref(s)));
  }
  for (const auto& t : doa.internal_states) {
    if (t == kEndState)
      out.push_back(error(code::ReservedEnd,
                          "'end' cannot be an internal-choice state",
                          std::nullopt, state_ref(t)));
    else if (!is_identifier(t))
      out.push_back(error(code::InvalidName,
                          "'" + t + "' is not a valid state name", std::nullopt,
                          state_ref(t)));
  }
  for (const auto& l : doa.labels)
    if (!is_identifier(l))
      out.push_back(error(code::InvalidName,
                          "'" + l + "' is not a valid label", std::nullopt,
                          "label:" + l));
  for (const auto& m : doa.methods) {
    bool ok = is_type_identifier(m.return_type) && is_identifier(m.name);
    for (const auto& p : m.params) ok = ok && is_type_identifier(p);
    if (!ok)
      out.push_back(error(code::InvalidName,
                          "'" + m.str() + "' is not a valid method signature",
                          std::nullopt, "method:" + m.str()));
  }

  if (!doa.has_state(doa.initial))
    out.push_back(error(code::UndefinedTarget,
                        "initial state '" + doa.initial + "' is not defined",
                        std::nullopt, state_ref(doa.initial)));
  else if (!doa.is_external(doa.initial))
    out.push_back(error(code::MalformedDoa,
                        "initial state '" + doa.initial +
                            "' must be an external-choice state",
                        std::nullopt, state_ref(doa.initial)));

  for (const auto& f : doa.finals) {
    if (!doa.has_state(f))
      out.push_back(error(code::UndefinedTarget,
                          "final state '" + f + "' is not defined",
                          std::nullopt, state_ref(f)));
    else if (!doa.is_external(f))
      out.push_back(error(code::MalformedDoa,
                          "final state '" + f +
                              "' must be an external-choice state",
                          std::nullopt, state_ref(f)));
  }

  for (const auto& e : doa.method_edges) {
    std::string where = "transition:" + e.from + " --" + e.sig.str() + "--> " + e.to;
    if (!doa.has_state(e.from))
      out.push_back(error(code::UndefinedTarget,
                          "transition source '" + e.from + "' is not defined",
                          std::nullopt, where));
    else if (!doa.is_external(e.from))
      out.push_back(error(code::MalformedDoa,
                          "method transition leaves internal-choice state '" +
                              e.from + "'",
                          std::nullopt, where));
    if (!doa.has_state(e.to))
      out.push_back(error(code::UndefinedTarget,
                          "transition target '" + e.to + "' is not defined",
                          std::nullopt, where));
    if (!doa.methods.contains(e.sig))
      out.push_back(error(code::MalformedDoa,
                          "method '" + e.sig.str() + "' is not in the alphabet",
                          std::nullopt, where));
  }
  for (const auto& e : doa.result_edges) {
    std::string where = "transition:" + e.from + " --" + e.label + "--> " + e.to;
    if (!doa.has_state(e.from))
      out.push_back(error(code::UndefinedTarget,
                          "transition source '" + e.from + "' is not defined",
                          std::nullopt, where));
    else if (!doa.is_internal(e.from))
      out.push_back(error(code::MalformedDoa,
                          "result transition leaves external-choice state '" +
                              e.from + "'",
                          std::nullopt, where));
    if (doa.is_internal(e.to))
      out.push_back(error(code::ChoiceToChoice,
                          "result transition from '" + e.from +
                              "' leads to internal-choice state '" + e.to + "'",
                          std::nullopt, where));
    else if (!doa.has_state(e.to))
      out.push_back(error(code::UndefinedTarget,
                          "transition target '" + e.to + "' is not defined",
                          std::nullopt, where));
    if (!doa.labels.contains(e.label))
      out.push_back(error(code::MalformedDoa,
                          "label '" + e.label + "' is not in the alphabet",
                          std::nullopt, where));
  }

  {
    const MethodEdge* prev = nullptr;
    for (const auto& e : doa.method_edges.sorted()) {
      if (prev && prev->from == e.from && prev->sig == e.sig)
        out.push_back(error(code::Nondeterministic,
                            "state '" + e.from + "' has several transitions on '" +
                                e.sig.str() + "'",
                            std::nullopt, state_ref(e.from)));
      prev = &e;
    }
    const ResultEdge* rprev = nullptr;
    for (const auto& e : doa.result_edges.sorted()) {
      if (rprev && rprev->from == e.from && rprev->label == e.label)
        out.push_back(error(code::Nondeterministic,
                            "choice '" + e.from + "' has several options labelled '" +
                                e.label + "'",
                            std::nullopt, state_ref(e.from)));
      rprev = &e;
    }
  }

  for (const auto& t : doa.internal_states) {
    auto& idx = doa.result_edges.sorted();
    auto it = idx.lower_bound(ResultEdge{t, {}, {}});
    if (it == idx.end() || it->from != t)
      out.push_back(error(code::ChoiceNoResults,
                          "internal-choice state '" + t +
                              "' has no result transitions",
                          std::nullopt, state_ref(t)));
  }

  for (const auto& f : doa.finals) {
    if (!doa.is_external(f) || !doa.has_outgoing(f)) continue;
    auto msg = "final state '" + f + "' has outgoing transitions";
    if (mode == DoaCheck::Decompile)
      out.push_back(error(code::FinalNotSink, msg, std::nullopt, state_ref(f)));
    else
      out.push_back(warning(code::FinalNotSink, msg, state_ref(f)));
  }

  if (doa.is_external(std::string(kEndState)) &&
      !doa.is_final_sink(std::string(kEndState)))
    out.push_back(error(code::ReservedEnd,
                        "state 'end' is reserved for the final sink",
                        std::nullopt, state_ref(std::string(kEndState))));

  auto live = reachable(doa);
  auto unreachable = [&](const std::string& s) {
    if (!live.count(s))
      out.push_back(warning(code::Unreachable,
                            "state '" + s + "' is unreachable", state_ref(s)));
  };
  for (const auto& s : doa.external_states) unreachable(s);
  for (const auto& t : doa.internal_states) unreachable(t);
  return out;
}

}  // namespace typestate
