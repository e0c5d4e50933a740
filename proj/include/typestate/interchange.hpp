#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "typestate/ast.hpp"
#include "typestate/ast_check.hpp"
#include "typestate/automaton.hpp"

namespace typestate {

using ordered_json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

inline ordered_json to_json(const Diagnostic& d) {
  ordered_json j;
  j["severity"] = std::string(to_string(d.severity));
  j["code"] = d.code;
  j["message"] = d.message;
  if (d.pos) {
    j["line"] = d.pos->line;
    j["column"] = d.pos->column;
    j["offset"] = d.pos->offset;
  }
  if (!d.subject.empty()) j["subject"] = d.subject;
  if (!d.expected.empty()) j["expected"] = d.expected;
  return j;
}

inline ordered_json to_json(const std::vector<Diagnostic>& ds) {
  ordered_json arr = ordered_json::array();
  for (const auto& d : ds) arr.push_back(to_json(d));
  return arr;
}

namespace detail {

inline SourcePos position_of(std::string_view text, std::size_t offset) {
  SourcePos p;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  p.offset = offset;
  return p;
}

inline Result<ordered_json> parse_json(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    return Result<ordered_json>::failure(
        error(code::JsonSyntax, e.what(), position_of(text, at)));
  }
}

// Schema violations carry a JSON pointer to the offending value.
struct SchemaError {
  std::string pointer;
  std::string message;
};

class Reader {
 public:
  const ordered_json& object(const ordered_json& j, const std::string& ptr) {
    if (!j.is_object()) fail(ptr, "expected an object");
    return j;
  }
  const ordered_json& array(const ordered_json& parent, const char* key,
                            const std::string& ptr) {
    auto it = parent.find(key);
    if (it == parent.end()) fail(ptr + "/" + key, "missing array");
    if (!it->is_array()) fail(ptr + "/" + key, "expected an array");
    return *it;
  }
  std::string string(const ordered_json& parent, const char* key,
                     const std::string& ptr) {
    auto it = parent.find(key);
    if (it == parent.end()) fail(ptr + "/" + key, "missing string");
    if (!it->is_string()) fail(ptr + "/" + key, "expected a string");
    return it->get<std::string>();
  }
  std::string string(const ordered_json& j, const std::string& ptr) {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }
  bool boolean(const ordered_json& parent, const char* key,
               const std::string& ptr, bool fallback) {
    auto it = parent.find(key);
    if (it == parent.end()) return fallback;
    if (!it->is_boolean()) fail(ptr + "/" + key, "expected a boolean");
    return it->get<bool>();
  }
  std::size_t index(const ordered_json& parent, const char* key,
                    const std::string& ptr) {
    auto it = parent.find(key);
    if (it == parent.end()) fail(ptr + "/" + key, "missing index");
    if (!it->is_number_unsigned()) fail(ptr + "/" + key, "expected an index");
    return it->get<std::size_t>();
  }
  std::vector<std::string> strings(const ordered_json& parent, const char* key,
                                   const std::string& ptr) {
    std::vector<std::string> out;
    const auto& arr = array(parent, key, ptr);
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(string(arr[i], ptr + "/" + key + "/" + std::to_string(i)));
    return out;
  }

  [[noreturn]] static void fail(const std::string& ptr, std::string msg) {
    throw SchemaError{ptr.empty() ? "/" : ptr, std::move(msg)};
  }
};

inline Diagnostic schema_diagnostic(const SchemaError& e) {
  return error(code::JsonSchema, e.pointer + ": " + e.message, std::nullopt,
               e.pointer);
}

inline ordered_json sig_to_json(const MethodSig& m) {
  ordered_json j;
  j["returnType"] = m.return_type;
  j["name"] = m.name;
  j["params"] = m.params;
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// DOA documents

inline std::string doa_to_json(const Doa& raw) {
  const Doa doa = with_implicit_end(raw);
  ordered_json j;
  j["schemaVersion"] = std::string(kSchemaVersion);

  std::vector<std::string> names;
  for (const auto& s : doa.external_states) names.push_back(s);
  for (const auto& t : doa.internal_states) names.push_back(t);
  std::sort(names.begin(), names.end(), [&](const auto& a, const auto& b) {
    bool ia = a == doa.initial, ib = b == doa.initial;
    if (ia != ib) return ia;
    return a < b;
  });
  ordered_json states = ordered_json::array();
  for (const auto& n : names) {
    ordered_json s;
    s["name"] = n;
    s["kind"] = doa.is_internal(n) ? "internal" : "external";
    s["initial"] = n == doa.initial;
    s["final"] = doa.finals.contains(n);
    states.push_back(std::move(s));
  }
  j["states"] = std::move(states);

  std::map<MethodSig, std::size_t> method_index;
  ordered_json methods = ordered_json::array();
  for (const auto& m : doa.methods) {
    method_index.emplace(m, methods.size());
    methods.push_back(detail::sig_to_json(m));
  }
  j["methods"] = std::move(methods);
  j["labels"] = doa.labels.items();

  ordered_json md = ordered_json::array();
  for (const auto& e : doa.method_edges) {
    ordered_json t;
    t["from"] = e.from;
    t["method"] = method_index.at(e.sig);
    t["to"] = e.to;
    md.push_back(std::move(t));
  }
  j["methodTransitions"] = std::move(md);

  ordered_json re = ordered_json::array();
  for (const auto& e : doa.result_edges) {
    ordered_json t;
    t["from"] = e.from;
    t["label"] = e.label;
    t["to"] = e.to;
    re.push_back(std::move(t));
  }
  j["resultTransitions"] = std::move(re);
  return j.dump(2);
}

// Reads a DOA document and runs validate_doa on it. Warnings ride along with
// a successful result.
inline Result<Doa> doa_from_json(std::string_view text,
                                 DoaCheck mode = DoaCheck::General) {
  auto parsed = detail::parse_json(text);
  if (!parsed) return Result<Doa>::failure(parsed.diagnostics());
  const auto& j = *parsed;
  detail::Reader r;
  Doa doa;
  try {
    r.object(j, "");
    if (r.string(j, "schemaVersion", "") != kSchemaVersion)
      r.fail("/schemaVersion", "unsupported schema version");

    const auto& states = r.array(j, "states", "");
    std::set<std::string> names;
    std::size_t initials = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::string ptr = "/states/" + std::to_string(i);
      const auto& s = r.object(states[i], ptr);
      auto name = r.string(s, "name", ptr);
      auto kind = r.string(s, "kind", ptr);
      bool initial = r.boolean(s, "initial", ptr, false);
      bool final = r.boolean(s, "final", ptr, false);
      if (!names.insert(name).second) r.fail(ptr + "/name", "duplicate state");
      if (kind == "external") {
        doa.external_states.insert(name);
      } else if (kind == "internal") {
        doa.internal_states.insert(name);
        if (final) r.fail(ptr + "/final", "internal states cannot be final");
        if (initial) r.fail(ptr + "/initial", "internal states cannot be initial");
      } else {
        r.fail(ptr + "/kind", "expected \"external\" or \"internal\"");
      }
      if (initial) {
        ++initials;
        doa.initial = name;
      }
      if (final) doa.finals.insert(name);
    }
    if (initials != 1) r.fail("/states", "exactly one state must be initial");

    const auto& methods = r.array(j, "methods", "");
    std::vector<MethodSig> sigs;
    for (std::size_t i = 0; i < methods.size(); ++i) {
      std::string ptr = "/methods/" + std::to_string(i);
      const auto& m = r.object(methods[i], ptr);
      MethodSig sig{r.string(m, "returnType", ptr), r.string(m, "name", ptr),
                    r.strings(m, "params", ptr)};
      if (!doa.methods.insert(sig)) r.fail(ptr, "duplicate method");
      sigs.push_back(std::move(sig));
    }
    for (const auto& l : r.strings(j, "labels", "")) doa.labels.insert(l);

    const auto& md = r.array(j, "methodTransitions", "");
    for (std::size_t i = 0; i < md.size(); ++i) {
      std::string ptr = "/methodTransitions/" + std::to_string(i);
      const auto& t = r.object(md[i], ptr);
      auto from = r.string(t, "from", ptr);
      auto idx = r.index(t, "method", ptr);
      if (idx >= sigs.size()) r.fail(ptr + "/method", "method index out of range");
      doa.method_edges.insert({from, sigs[idx], r.string(t, "to", ptr)});
    }
    const auto& re = r.array(j, "resultTransitions", "");
    for (std::size_t i = 0; i < re.size(); ++i) {
      std::string ptr = "/resultTransitions/" + std::to_string(i);
      const auto& t = r.object(re[i], ptr);
      doa.result_edges.insert({r.string(t, "from", ptr), r.string(t, "label", ptr),
                               r.string(t, "to", ptr)});
    }
  } catch (const detail::SchemaError& e) {
    return Result<Doa>::failure(detail::schema_diagnostic(e));
  }

  auto diags = validate_doa(doa, mode);
  if (has_errors(diags)) return Result<Doa>::failure(std::move(diags));
  return Result<Doa>(std::move(doa), std::move(diags));
}

// ---------------------------------------------------------------------------
// AST documents

namespace detail {

inline ordered_json body_to_json(const StateBody& body);

inline ordered_json target_to_json(const Target& t) {
  ordered_json j;
  switch (t.kind) {
    case Target::Kind::End: j["kind"] = "end"; break;
    case Target::Kind::Named:
      j["kind"] = "state";
      j["name"] = t.name;
      break;
    case Target::Kind::Inline:
      j["kind"] = "inline";
      j["body"] = body_to_json(t.body);
      break;
    case Target::Kind::Choice: {
      j["kind"] = "choice";
      ordered_json opts = ordered_json::array();
      for (const auto& o : t.options) {
        ordered_json oj;
        oj["label"] = o.label;
        oj["target"] = target_to_json(o.target);
        opts.push_back(std::move(oj));
      }
      j["options"] = std::move(opts);
      break;
    }
  }
  return j;
}

inline ordered_json transitions_to_json(const StateBody& body) {
  ordered_json arr = ordered_json::array();
  for (const auto& m : body.transitions) {
    ordered_json t;
    t["returnType"] = m.sig.return_type;
    t["method"] = m.sig.name;
    t["params"] = m.sig.params;
    t["target"] = target_to_json(m.target);
    arr.push_back(std::move(t));
  }
  return arr;
}

inline ordered_json body_to_json(const StateBody& body) {
  ordered_json j;
  j["transitions"] = transitions_to_json(body);
  return j;
}

class AstReader : Reader {
 public:
  static constexpr std::size_t kMaxDepth = 200;

  TypestateAst protocol(const ordered_json& j) {
    TypestateAst ast;
    object(j, "");
    ast.name = string(j, "name", "");
    const auto& states = array(j, "states", "");
    for (std::size_t i = 0; i < states.size(); ++i) {
      std::string ptr = "/states/" + std::to_string(i);
      const auto& s = object(states[i], ptr);
      NamedStateDef def;
      def.name = string(s, "name", ptr);
      def.body = transitions(s, ptr, 0);
      ast.states.push_back(std::move(def));
    }
    return ast;
  }

 private:
  StateBody transitions(const ordered_json& owner, const std::string& ptr,
                        std::size_t depth) {
    if (depth > kMaxDepth) fail(ptr, "nesting too deep");
    StateBody body;
    const auto& arr = array(owner, "transitions", ptr);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string tp = ptr + "/transitions/" + std::to_string(i);
      const auto& t = object(arr[i], tp);
      MethodTransition m;
      m.sig.return_type = string(t, "returnType", tp);
      m.sig.name = string(t, "method", tp);
      m.sig.params = strings(t, "params", tp);
      m.target = target(member(t, "target", tp), tp + "/target", depth, true);
      body.transitions.push_back(std::move(m));
    }
    return body;
  }

  const ordered_json& member(const ordered_json& j, const char* key,
                             const std::string& ptr) {
    auto it = j.find(key);
    if (it == j.end()) fail(ptr + "/" + key, "missing member");
    return *it;
  }

  Target target(const ordered_json& j, const std::string& ptr,
                std::size_t depth, bool allow_choice) {
    object(j, ptr);
    auto kind = string(j, "kind", ptr);
    if (kind == "end") return Target::end();
    if (kind == "state") return Target::named(string(j, "name", ptr));
    if (kind == "inline")
      return Target::inline_state(
          transitions(object(member(j, "body", ptr), ptr + "/body"),
                      ptr + "/body", depth + 1));
    if (kind == "choice" && allow_choice) {
      std::vector<LabeledTarget> opts;
      const auto& arr = array(j, "options", ptr);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string op = ptr + "/options/" + std::to_string(i);
        const auto& o = object(arr[i], op);
        LabeledTarget lt;
        lt.label = string(o, "label", op);
        lt.target = target(member(o, "target", op), op + "/target", depth, false);
        opts.push_back(std::move(lt));
      }
      return Target::choice(std::move(opts));
    }
    if (kind == "choice") fail(ptr + "/kind", "a choice option cannot be a choice");
    fail(ptr + "/kind", "unknown target kind '" + kind + "'");
  }
};

}  // namespace detail

inline std::string ast_to_json(const TypestateAst& ast) {
  ordered_json j;
  j["name"] = ast.name;
  ordered_json states = ordered_json::array();
  for (const auto& s : ast.states) {
    ordered_json sj;
    sj["name"] = s.name;
    sj["transitions"] = detail::transitions_to_json(s.body);
    states.push_back(std::move(sj));
  }
  j["states"] = std::move(states);
  return j.dump(2);
}

// Reads an AST document and runs validate_ast on it.
inline Result<TypestateAst> ast_from_json(std::string_view text) {
  auto parsed = detail::parse_json(text);
  if (!parsed) return Result<TypestateAst>::failure(parsed.diagnostics());
  TypestateAst ast;
  try {
    ast = detail::AstReader().protocol(*parsed);
  } catch (const detail::SchemaError& e) {
    return Result<TypestateAst>::failure(detail::schema_diagnostic(e));
  }
  auto diags = validate_ast(ast);
  if (has_errors(diags)) return Result<TypestateAst>::failure(std::move(diags));
  return Result<TypestateAst>(std::move(ast), std::move(diags));
}

}  // namespace typestate
