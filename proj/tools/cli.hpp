#pragma once

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "typestate/dot.hpp"
#include "typestate/equivalence.hpp"
#include "typestate/pipeline.hpp"
#include "typestate/service.hpp"

namespace typestate::cli {

enum ExitStatus { kOk = 0, kDiagnostics = 1, kUsage = 2 };

struct Io {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

inline bool color_from_env() {
  const char* v = std::getenv("TYPESTATE_COLOR");
  return v && std::string(v) == "1";
}

// file:line:col: severity[CODE]: message
inline void print(const Io& io, const std::string& file, const Diagnostic& d) {
  io.err << file;
  if (d.pos) io.err << ':' << d.pos->line << ':' << d.pos->column;
  io.err << ": ";
  if (io.color) io.err << (d.is_error() ? "\033[31m" : "\033[33m");
  io.err << to_string(d.severity);
  if (io.color) io.err << "\033[0m";
  io.err << '[' << d.code << "]: " << d.message;
  if (!d.pos && !d.subject.empty()) io.err << " (" << d.subject << ')';
  io.err << '\n';
}

inline void print(const Io& io, const std::string& file,
                  const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds) print(io, file, d);
}

inline bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::optional<InputKind> kind_from_path(const std::string& path) {
  if (ends_with(path, ".doa.json")) return InputKind::Doa;
  if (ends_with(path, ".ast.json")) return InputKind::Ast;
  if (ends_with(path, ".protocol")) return InputKind::Typestate;
  return std::nullopt;
}

// "dir/drone.doa.json" -> "drone"
inline std::string stem_of(const std::string& path) {
  std::string name = std::filesystem::path(path).filename().string();
  for (std::string_view ext : {".doa.json", ".ast.json", ".protocol", ".json"}) {
    if (ends_with(name, ext)) return name.substr(0, name.size() - ext.size());
  }
  return std::filesystem::path(name).stem().string();
}

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Input {
  std::string path;
  InputKind kind;
  std::string text;
};

// Loads a file and decides its kind. Failures are usage errors.
inline std::optional<Input> open_input(const Io& io, const std::string& path,
                                       const std::string& kind_flag) {
  std::optional<InputKind> kind;
  if (!kind_flag.empty()) {
    kind = parse_kind(kind_flag);
  } else {
    kind = kind_from_path(path);
  }
  if (!kind) {
    io.err << path << ": cannot tell the input kind; use --kind typestate|ast|doa\n";
    return std::nullopt;
  }
  auto text = read_file(path);
  if (!text) {
    io.err << path << ": cannot read file\n";
    return std::nullopt;
  }
  return Input{path, *kind, std::move(*text)};
}

inline int emit(const Io& io, const std::string& out_path,
                const std::string& text) {
  if (out_path.empty()) {
    io.out << text << '\n';
    return kOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    io.err << out_path << ": cannot write file\n";
    return kUsage;
  }
  f << text << '\n';
  return kOk;
}

struct CompileArgs {
  std::string input, out, format = "doa-json", kind;
  bool ast = false;
};

inline int cmd_compile(const Io& io, const CompileArgs& a) {
  auto in = open_input(io, a.input, a.kind);
  if (!in) return kUsage;
  if (in->kind == InputKind::Doa) {
    io.err << a.input << ": compile expects a protocol or AST document\n";
    return kUsage;
  }
  if (a.ast) {
    auto ast = load_ast(in->kind, in->text);
    print(io, a.input, ast.diagnostics());
    if (!ast) return kDiagnostics;
    return emit(io, a.out, ast_to_json(*ast));
  }
  auto doa = load_doa(in->kind, in->text);
  print(io, a.input, doa.diagnostics());
  if (!doa) return kDiagnostics;
  return emit(io, a.out, a.format == "dot" ? doa_to_dot(*doa) : doa_to_json(*doa));
}

struct DecompileArgs {
  std::string input, name, out, kind;
};

inline int cmd_decompile(const Io& io, const DecompileArgs& a) {
  auto in = open_input(io, a.input, a.kind.empty() ? "doa" : a.kind);
  if (!in) return kUsage;
  auto doa = load_doa(in->kind, in->text, DoaCheck::Decompile);
  if (!doa) {
    print(io, a.input, doa.diagnostics());
    return kDiagnostics;
  }
  auto text = decompile_text(a.name.empty() ? stem_of(a.input) : a.name, *doa);
  print(io, a.input, text.diagnostics());
  if (!text) return kDiagnostics;
  return emit(io, a.out, *text);
}

inline int cmd_check(const Io& io, const std::string& input,
                     const std::string& kind) {
  auto in = open_input(io, input, kind);
  if (!in) return kUsage;
  auto diags = check_document(in->kind, in->text);
  print(io, input, diags);
  return has_errors(diags) ? kDiagnostics : kOk;
}

inline int cmd_equiv(const Io& io, const std::string& a, const std::string& b,
                     bool language) {
  std::optional<Doa> doas[2];
  const std::string paths[2] = {a, b};
  for (int i = 0; i < 2; ++i) {
    auto in = open_input(io, paths[i], "");
    if (!in) return kUsage;
    auto doa = load_doa(in->kind, in->text);
    if (!doa) {
      print(io, paths[i], doa.diagnostics());
      return kUsage;
    }
    doas[i] = *doa;
  }
  auto obs = language ? Observation::Language : Observation::Traces;
  auto word = shortest_distinguishing_word(*doas[0], *doas[1], obs);
  if (!word) {
    io.out << "equivalent\n";
    return kOk;
  }
  io.out << "distinguished by: " << (word->empty() ? "ε" : to_string(*word))
         << '\n';
  return kDiagnostics;
}

// Parses arguments and runs one subcommand. `serve` is wired up by main.
inline int run(std::vector<std::string> args, const Io& io,
               const std::function<int(int)>& serve = {}) {
  CLI::App app{"Convert between typestate protocols and object automata", "typestate"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "protocol -> automaton (JSON or DOT)");
  compile->add_option("input", ca.input, "protocol or .ast.json file")->required();
  compile->add_option("--out,-o", ca.out, "output file (default: stdout)");
  compile->add_option("--format", ca.format, "doa-json or dot")
      ->check(CLI::IsMember({"doa-json", "dot"}));
  compile->add_flag("--ast", ca.ast, "emit the AST document instead");
  compile->add_option("--kind", ca.kind, "override input kind")
      ->check(CLI::IsMember({"typestate", "ast", "doa"}));

  DecompileArgs da;
  auto* decompile = app.add_subcommand("decompile", "automaton -> protocol text");
  decompile->add_option("input", da.input, ".doa.json file")->required();
  decompile->add_option("--name", da.name, "protocol name (default: file stem)");
  decompile->add_option("--out,-o", da.out, "output file (default: stdout)");
  decompile->add_option("--kind", da.kind, "override input kind")
      ->check(CLI::IsMember({"typestate", "ast", "doa"}));

  std::string check_in, check_kind;
  auto* check = app.add_subcommand("check", "report diagnostics");
  check->add_option("input", check_in, "input file")->required();
  check->add_option("--kind", check_kind, "override input kind")
      ->check(CLI::IsMember({"typestate", "ast", "doa"}));

  std::string eq_a, eq_b;
  bool language = false;
  auto* equiv = app.add_subcommand("equiv", "compare two inputs");
  equiv->add_option("a", eq_a, "first input")->required();
  equiv->add_option("b", eq_b, "second input")->required();
  equiv->add_flag("--language", language,
                  "compare accepted words only, ignoring incomplete traces");

  int port = service::kDefaultPort;
  if (const char* env = std::getenv("TYPESTATE_PORT")) {
    try {
      port = std::stoi(env);
    } catch (...) {
    }
  }
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP conversion service");
  serve_cmd->add_option("--port", port, "listen port (default 8080, or $TYPESTATE_PORT)")
      ->check(CLI::Range(1, 65535));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, io.out, io.err);
    return rc == 0 ? kOk : kUsage;
  }

  if (*compile) return cmd_compile(io, ca);
  if (*decompile) return cmd_decompile(io, da);
  if (*check) return cmd_check(io, check_in, check_kind);
  if (*equiv) return cmd_equiv(io, eq_a, eq_b, language);
  if (*serve_cmd) {
    if (!serve) {
      io.err << "serve is not available here\n";
      return kUsage;
    }
    return serve(port);
  }
  return kUsage;
}

}  // namespace typestate::cli
