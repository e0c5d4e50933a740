#pragma once

#include <set>
#include <string>
#include <vector>

#include "typestate/ast.hpp"
#include "typestate/diagnostic.hpp"
#include "typestate/lexer.hpp"

namespace typestate {

namespace detail {

class AstChecker {
 public:
  explicit AstChecker(const TypestateAst& ast) : ast_(ast) {
    for (const auto& s : ast.states) defined_.insert(s.name);
  }

  std::vector<Diagnostic> run() {
    std::set<std::string> seen;
    for (const auto& s : ast_.states) {
      if (s.name == "end") {
        out_.push_back(error(code::ReservedEnd,
                             "state name 'end' is reserved", s.origin.pos,
                             "state:end"));
      } else if (!is_identifier(s.name)) {
        out_.push_back(error(code::InvalidName,
                             "'" + s.name + "' is not a valid state name",
                             s.origin.pos, "state:" + s.name));
      }
      if (!seen.insert(s.name).second) {
        out_.push_back(error(code::DupState,
                             "state '" + s.name + "' is defined more than once",
                             s.origin.pos, "state:" + s.name));
      }
      body(s.body, s.name);
    }
    return std::move(out_);
  }

 private:
  void body(const StateBody& b, const std::string& owner) {
    std::set<MethodKey> keys;
    for (const auto& m : b.transitions) {
      if (!is_type_identifier(m.sig.return_type) || !is_identifier(m.sig.name)) {
        out_.push_back(error(code::InvalidName,
                             "invalid method signature '" + m.sig.str() + "'",
                             m.origin.pos, "state:" + owner));
      }
      for (const auto& p : m.sig.params) {
        if (!is_type_identifier(p))
          out_.push_back(error(code::InvalidName,
                               "invalid parameter type '" + p + "'",
                               m.origin.pos, "state:" + owner));
      }
      if (!keys.insert(key_of(m.sig)).second) {
        out_.push_back(error(code::DupTransition,
                             "method '" + m.sig.str() +
                                 "' is offered more than once in state '" +
                                 owner + "'",
                             m.origin.pos, "state:" + owner));
      }
      target(m.target, owner);
    }
  }

  void target(const Target& t, const std::string& owner) {
    switch (t.kind) {
      case Target::Kind::End: break;
      case Target::Kind::Named:
        if (t.name == "end") {
          out_.push_back(error(code::ReservedEnd,
                               "'end' must be written as the end keyword",
                               t.origin.pos, "state:end"));
        } else if (!defined_.count(t.name)) {
          out_.push_back(error(code::UndefinedState,
                               "state '" + t.name + "' is not defined",
                               t.origin.pos, "state:" + t.name));
        }
        break;
      case Target::Kind::Inline: body(t.body, owner); break;
      case Target::Kind::Choice: {
        if (t.options.empty()) {
          out_.push_back(error(code::EmptyChoice,
                               "internal choice has no options", t.origin.pos,
                               "state:" + owner));
        }
        std::set<std::string> labels;
        for (const auto& o : t.options) {
          if (!is_identifier(o.label)) {
            out_.push_back(error(code::InvalidName,
                                 "'" + o.label + "' is not a valid label",
                                 o.origin.pos, "label:" + o.label));
          }
          if (!labels.insert(o.label).second) {
            out_.push_back(error(code::DupLabel,
                                 "label '" + o.label +
                                     "' appears more than once in a choice",
                                 o.origin.pos, "label:" + o.label));
          }
          if (o.target.kind == Target::Kind::Choice) {
            out_.push_back(error(code::ChoiceToChoice,
                                 "a choice option cannot lead to another choice",
                                 o.origin.pos, "label:" + o.label));
          } else {
            target(o.target, owner);
          }
        }
        break;
      }
    }
  }

  const TypestateAst& ast_;
  std::set<std::string> defined_;
  std::vector<Diagnostic> out_;
};

}  // namespace detail

// Reports every semantic violation in a parsed protocol; empty means valid.
inline std::vector<Diagnostic> validate_ast(const TypestateAst& ast) {
  std::vector<Diagnostic> out;
  if (!is_identifier(ast.name))
    out.push_back(error(code::InvalidName,
                        "'" + ast.name + "' is not a valid protocol name"));
  auto rest = detail::AstChecker(ast).run();
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace typestate
