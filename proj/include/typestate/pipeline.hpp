#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "typestate/ast_check.hpp"
#include "typestate/compile.hpp"
#include "typestate/decompile.hpp"
#include "typestate/interchange.hpp"
#include "typestate/parser.hpp"

namespace typestate {

// The three document kinds that can be converted into each other.
enum class InputKind { Typestate, Ast, Doa };

inline std::optional<InputKind> parse_kind(std::string_view s) {
  if (s == "typestate") return InputKind::Typestate;
  if (s == "ast") return InputKind::Ast;
  if (s == "doa") return InputKind::Doa;
  return std::nullopt;
}

inline std::string_view to_string(InputKind k) {
  switch (k) {
    case InputKind::Typestate: return "typestate";
    case InputKind::Ast: return "ast";
    case InputKind::Doa: return "doa";
  }
  return "?";
}

// Protocol text -> validated AST.
inline Result<TypestateAst> load_protocol(std::string_view text) {
  auto ast = parse(text);
  if (!ast) return ast;
  auto diags = validate_ast(*ast);
  if (has_errors(diags)) return Result<TypestateAst>::failure(std::move(diags));
  return Result<TypestateAst>(std::move(ast).value(), std::move(diags));
}

// Protocol text or AST document -> validated AST.
inline Result<TypestateAst> load_ast(InputKind kind, std::string_view text) {
  if (kind == InputKind::Ast) return ast_from_json(text);
  return load_protocol(text);
}

// Compiles a validated AST; automaton warnings such as W_UNREACHABLE are
// attached to the result.
inline Result<Doa> compile_checked(const Result<TypestateAst>& ast) {
  if (!ast) return Result<Doa>::failure(ast.diagnostics());
  auto diags = ast.diagnostics();
  Doa doa = compile(*ast);
  auto more = validate_doa(doa);
  diags.insert(diags.end(), more.begin(), more.end());
  return Result<Doa>(std::move(doa), std::move(diags));
}

// Any document kind -> validated automaton.
inline Result<Doa> load_doa(InputKind kind, std::string_view text,
                            DoaCheck mode = DoaCheck::General) {
  if (kind == InputKind::Doa) return doa_from_json(text, mode);
  return compile_checked(load_ast(kind, text));
}

// Full validation catalogue for a document; the diagnostics are the result.
inline std::vector<Diagnostic> check_document(InputKind kind,
                                              std::string_view text) {
  return load_doa(kind, text).diagnostics();
}

}  // namespace typestate
