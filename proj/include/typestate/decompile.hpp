#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "typestate/ast.hpp"
#include "typestate/automaton.hpp"
#include "typestate/printer.hpp"

namespace typestate {

namespace detail {

inline bool needs_definition(const Doa& doa, const std::string& s) {
  return doa.is_external(s) && !doa.is_final_sink(s);
}

}  // namespace detail

// External states in the order decompile defines them: the initial state,
// then breadth-first over transitions (siblings by normalized signature or
// label text), then unreachable states by name. Final sinks are left out, as
// they are written `end`, except an initial final sink that has to introduce
// other definitions.
inline std::vector<std::string> emit_state_order(const Doa& raw) {
  const Doa doa = with_implicit_end(raw);
  std::vector<std::string> order;
  std::set<std::string> seen{doa.initial};
  std::deque<std::string> queue{doa.initial};
  while (!queue.empty()) {
    auto x = std::move(queue.front());
    queue.pop_front();
    if (detail::needs_definition(doa, x)) order.push_back(x);

    std::vector<std::pair<std::string, std::string>> succ;  // (key, target)
    for (const auto& e : doa.method_edges)
      if (e.from == x) succ.emplace_back(e.sig.str(), e.to);
    for (const auto& e : doa.result_edges)
      if (e.from == x) succ.emplace_back(e.label, e.to);
    std::sort(succ.begin(), succ.end());
    for (auto& [_, y] : succ)
      if (seen.insert(y).second) queue.push_back(y);
  }

  std::vector<std::string> rest;
  for (const auto& s : doa.external_states)
    if (!seen.count(s) && detail::needs_definition(doa, s)) rest.push_back(s);
  std::sort(rest.begin(), rest.end());
  order.insert(order.end(), rest.begin(), rest.end());

  if (!order.empty() && doa.is_final_sink(doa.initial))
    order.insert(order.begin(), doa.initial);
  return order;
}

namespace detail {

class Decompiler {
 public:
  Decompiler(const Doa& doa, std::vector<std::string> order)
      : doa_(doa), order_(std::move(order)), defined_(order_.begin(), order_.end()) {}

  std::vector<NamedStateDef> states() const {
    std::vector<NamedStateDef> out;
    for (const auto& s : order_) {
      NamedStateDef def{s, {}, {}};
      for (const auto& e : doa_.method_edges)
        if (e.from == s) def.body.transitions.push_back({e.sig, target(e.to), {}});
      out.push_back(std::move(def));
    }
    return out;
  }

 private:
  Target external(const std::string& n) const {
    if (defined_.count(n)) return Target::named(n);
    return Target::end();  // final sink
  }

  Target target(const std::string& n) const {
    if (!doa_.is_internal(n)) return external(n);
    std::vector<LabeledTarget> options;
    for (const auto& e : doa_.result_edges)
      if (e.from == n) options.push_back({e.label, external(e.to), {}});
    return Target::choice(std::move(options));
  }

  const Doa& doa_;
  std::vector<std::string> order_;
  std::set<std::string> defined_;
};

}  // namespace detail

// Recovers a protocol from an automaton. Fails with the validation
// diagnostics (finals must be sinks here) or E_INITIAL_IS_END.
inline Result<TypestateAst> decompile(const std::string& name, const Doa& raw) {
  std::vector<Diagnostic> diags;
  if (!is_identifier(name))
    diags.push_back(error(code::InvalidName,
                          "'" + name + "' is not a valid protocol name"));
  auto checks = validate_doa(raw, DoaCheck::Decompile);
  diags.insert(diags.end(), checks.begin(), checks.end());
  if (has_errors(diags)) return Result<TypestateAst>::failure(std::move(diags));

  const Doa doa = with_implicit_end(raw);
  auto order = emit_state_order(doa);
  if (!order.empty() && order.front() == kEndState) {
    diags.push_back(error(code::InitialIsEnd,
                          "the initial state is 'end' but other states exist",
                          std::nullopt, "state:end"));
    return Result<TypestateAst>::failure(std::move(diags));
  }

  // `x = {}` is the only way to write a state without transitions, and it
  // reads back as final.
  for (const auto& s : order)
    if (!doa.finals.contains(s) && !doa.has_outgoing(s))
      diags.push_back(warning(code::DeadEnd,
                              "state '" + s + "' is not final and has no transitions; "
                              "it is written as '" + s + " = {}', which is final",
                              "state:" + s));

  TypestateAst ast;
  ast.name = name;
  ast.states = detail::Decompiler(doa, std::move(order)).states();
  return Result<TypestateAst>(std::move(ast), std::move(diags));
}

// decompile followed by render.
inline Result<std::string> decompile_text(const std::string& name,
                                          const Doa& doa) {
  auto ast = decompile(name, doa);
  if (!ast) return Result<std::string>::failure(ast.diagnostics());
  return Result<std::string>(render(*ast), ast.diagnostics());
}

}  // namespace typestate
