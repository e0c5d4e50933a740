#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace typestate {

// Position inside protocol text. Columns count bytes.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class Severity { Error, Warning };

inline std::string_view to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

// Documented diagnostic codes.
namespace code {
inline constexpr std::string_view Lex = "E_LEX";
inline constexpr std::string_view Parse = "E_PARSE";
inline constexpr std::string_view ReservedEnd = "E_RESERVED_END";
inline constexpr std::string_view UndefinedState = "E_UNDEFINED_STATE";
inline constexpr std::string_view DupState = "E_DUP_STATE";
inline constexpr std::string_view DupTransition = "E_DUP_TRANSITION";
inline constexpr std::string_view DupLabel = "E_DUP_LABEL";
inline constexpr std::string_view EmptyChoice = "E_EMPTY_CHOICE";
inline constexpr std::string_view UndefinedTarget = "E_UNDEFINED_TARGET";
inline constexpr std::string_view ChoiceNoResults = "E_CHOICE_NO_RESULTS";
inline constexpr std::string_view ChoiceToChoice = "E_CHOICE_TO_CHOICE";
inline constexpr std::string_view Nondeterministic = "E_NONDETERMINISTIC";
inline constexpr std::string_view FinalNotSink = "E_FINAL_NOT_SINK";
inline constexpr std::string_view MalformedDoa = "E_MALFORMED_DOA";
inline constexpr std::string_view InvalidName = "E_INVALID_NAME";
inline constexpr std::string_view Unreachable = "W_UNREACHABLE";
inline constexpr std::string_view DeadEnd = "W_DEAD_END";
inline constexpr std::string_view UnionConflict = "E_UNION_CONFLICT";
inline constexpr std::string_view InitialIsEnd = "E_INITIAL_IS_END";
inline constexpr std::string_view JsonSyntax = "E_JSON_SYNTAX";
inline constexpr std::string_view JsonSchema = "E_JSON_SCHEMA";
inline constexpr std::string_view Io = "E_IO";
}  // namespace code

// A machine-readable finding. `pos` locates it in source text; `subject`
// names an automaton element ("state:Idle") or a JSON pointer ("/states/0").
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::optional<SourcePos> pos;
  std::string subject;
  std::vector<std::string> expected;  // parse errors only

  bool is_error() const { return severity == Severity::Error; }
};

inline Diagnostic error(std::string_view c, std::string message,
                        std::optional<SourcePos> pos = std::nullopt,
                        std::string subject = {}) {
  return Diagnostic{Severity::Error, std::string(c), std::move(message), pos,
                    std::move(subject), {}};
}

inline Diagnostic warning(std::string_view c, std::string message,
                          std::string subject = {}) {
  return Diagnostic{Severity::Warning, std::string(c), std::move(message),
                    std::nullopt, std::move(subject), {}};
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.is_error(); });
}

inline std::vector<std::string> codes_of(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  out.reserve(ds.size());
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

}  // namespace typestate
