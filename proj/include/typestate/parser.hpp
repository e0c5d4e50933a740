#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "typestate/ast.hpp"
#include "typestate/lexer.hpp"
#include "typestate/result.hpp"

namespace typestate {

// Instrumentation filled in by the parser. `max_lookahead` is the largest
// number of tokens any single production decision inspected.
struct ParseStats {
  std::size_t decisions = 0;
  std::size_t max_lookahead = 0;
  std::size_t backtracks = 0;
  std::size_t tokens_consumed = 0;
};

namespace detail {

struct ParseFailure {
  Diagnostic diagnostic;
};

// Recursive descent over the typestate grammar with a single token of
// lookahead. Every alternative is selected by the kind of the next token.
//
//   T   -> typestate name { TB }
//   TB  -> e | SDN TB          SDN -> state = SD      SD -> { S }
//   S   -> e | M SN            SN  -> e | , M SN
//   M   -> type method ( A ) : W
//   A   -> e | type AN         AN  -> e | , type AN
//   W   -> end | SD | < O > | state
//   O   -> L ON                ON  -> e | , O
//   L   -> label : LT          LT  -> end | state | SD
//
// Two deliberate widenings let validation report them instead of a syntax
// error: a state definition may be named `end`, and `< >` is accepted as an
// empty choice.
class Parser {
 public:
  static constexpr std::size_t kMaxDepth = 200;

  Parser(std::vector<Token> tokens, ParseStats* stats)
      : tokens_(std::move(tokens)), stats_(stats) {}

  TypestateAst protocol() {
    TypestateAst ast;
    expect(TokenKind::KwTypestate);
    ast.name = identifier("protocol name");
    expect(TokenKind::LBrace);
    // TB
    while (true) {
      Decision d(*this);
      auto k = lookahead().kind;
      if (k == TokenKind::RBrace) break;
      if (k == TokenKind::Ident || k == TokenKind::KwEnd) {
        ast.states.push_back(state_definition());
        continue;
      }
      fail({TokenKind::Ident, TokenKind::RBrace});
    }
    expect(TokenKind::RBrace);
    expect(TokenKind::Eof);
    return ast;
  }

 private:
  // Scope of one production choice; records how far it looked ahead.
  class Decision {
   public:
    explicit Decision(Parser& p) : p_(p), saved_(p.consulted_) {
      p_.consulted_ = 0;
      if (p_.stats_) ++p_.stats_->decisions;
    }
    ~Decision() {
      if (p_.stats_)
        p_.stats_->max_lookahead =
            std::max(p_.stats_->max_lookahead, p_.consulted_);
      p_.consulted_ = saved_;
    }
    Decision(const Decision&) = delete;
    Decision& operator=(const Decision&) = delete;

   private:
    Parser& p_;
    std::size_t saved_;
  };

  const Token& lookahead(std::size_t k = 0) {
    consulted_ = std::max(consulted_, k + 1);
    return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
  }

  // Position of the next token without counting it as a decision input.
  const Token& current() const { return tokens_[pos_]; }

  Token consume() {
    Token t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    if (stats_) ++stats_->tokens_consumed;
    return t;
  }

  [[noreturn]] void fail(std::vector<TokenKind> expected,
                         std::string_view note = {}) {
    const Token& t = current();
    std::string found = t.kind == TokenKind::Eof
                            ? std::string("end of input")
                            : "'" + t.text + "'";
    std::string msg = "unexpected " + found + ", expected ";
    Diagnostic d = error(code::Parse, "", t.begin);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += describe(expected[i]);
      d.expected.emplace_back(describe(expected[i]));
    }
    if (!note.empty()) msg += std::string(" (") + std::string(note) + ")";
    d.message = std::move(msg);
    throw ParseFailure{std::move(d)};
  }

  Token expect(TokenKind k) {
    if (current().kind != k) fail({k});
    return consume();
  }

  std::string identifier(std::string_view what) {
    const Token& t = current();
    if (t.kind != TokenKind::Ident) fail({TokenKind::Ident}, what);
    if (!is_identifier(t.text))
      fail({TokenKind::Ident},
           std::string(what) + " cannot be a qualified name");
    return consume().text;
  }

  std::string type_name() {
    if (current().kind != TokenKind::Ident) fail({TokenKind::Ident}, "type");
    return consume().text;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) {
        throw ParseFailure{error(code::Parse, "nesting too deep",
                                 p_.current().begin)};
      }
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  NamedStateDef state_definition() {
    NamedStateDef def;
    const Token& t = current();
    def.origin.pos = t.begin;
    if (t.kind == TokenKind::KwEnd) {
      def.name = consume().text;  // rejected later as a reserved name
    } else {
      def.name = identifier("state name");
    }
    expect(TokenKind::Equals);
    def.body = state_body();
    return def;
  }

  // SD -> { S }
  StateBody state_body() {
    DepthGuard guard(*this);
    StateBody body;
    expect(TokenKind::LBrace);
    {
      Decision d(*this);
      auto k = lookahead().kind;
      if (k == TokenKind::RBrace) {
        consume();
        return body;
      }
      if (k != TokenKind::Ident) fail({TokenKind::Ident, TokenKind::RBrace});
    }
    body.transitions.push_back(method_transition());
    // SN
    while (true) {
      Decision d(*this);
      auto k = lookahead().kind;
      if (k == TokenKind::RBrace) break;
      if (k != TokenKind::Comma) fail({TokenKind::Comma, TokenKind::RBrace});
      consume();
      body.transitions.push_back(method_transition());
    }
    expect(TokenKind::RBrace);
    return body;
  }

  // M -> type method ( A ) : W
  MethodTransition method_transition() {
    MethodTransition m;
    m.origin.pos = current().begin;
    m.sig.return_type = type_name();
    m.sig.name = identifier("method name");
    expect(TokenKind::LParen);
    {
      Decision d(*this);
      auto k = lookahead().kind;
      if (k == TokenKind::Ident) {
        m.sig.params.push_back(type_name());
      } else if (k != TokenKind::RParen) {
        fail({TokenKind::Ident, TokenKind::RParen});
      }
    }
    if (!m.sig.params.empty()) {
      // AN
      while (true) {
        Decision d(*this);
        auto k = lookahead().kind;
        if (k == TokenKind::RParen) break;
        if (k != TokenKind::Comma) fail({TokenKind::Comma, TokenKind::RParen});
        consume();
        m.sig.params.push_back(type_name());
      }
    }
    expect(TokenKind::RParen);
    expect(TokenKind::Colon);
    m.target = target();
    return m;
  }

  // W -> end | SD | < O > | state
  Target target() {
    Decision d(*this);
    Origin o{current().begin};
    switch (lookahead().kind) {
      case TokenKind::KwEnd:
        consume();
        return Target::end(o);
      case TokenKind::LBrace:
        return Target::inline_state(state_body(), o);
      case TokenKind::LAngle:
        return Target::choice(choice_options(), o);
      case TokenKind::Ident:
        return Target::named(identifier("state name"), o);
      default:
        fail({TokenKind::KwEnd, TokenKind::LBrace, TokenKind::LAngle,
              TokenKind::Ident});
    }
  }

  // < O >
  std::vector<LabeledTarget> choice_options() {
    std::vector<LabeledTarget> options;
    expect(TokenKind::LAngle);
    {
      Decision d(*this);
      auto k = lookahead().kind;
      if (k == TokenKind::RAngle) {
        consume();
        return options;  // reported as an empty choice by validation
      }
      if (k != TokenKind::Ident) fail({TokenKind::Ident, TokenKind::RAngle});
    }
    options.push_back(labeled_target());
    // ON
    while (true) {
      Decision d(*this);
      auto k = lookahead().kind;
      if (k == TokenKind::RAngle) break;
      if (k != TokenKind::Comma) fail({TokenKind::Comma, TokenKind::RAngle});
      consume();
      options.push_back(labeled_target());
    }
    expect(TokenKind::RAngle);
    return options;
  }

  // L -> label : LT ;  LT -> end | state | SD
  LabeledTarget labeled_target() {
    LabeledTarget opt;
    opt.origin.pos = current().begin;
    opt.label = identifier("label");
    expect(TokenKind::Colon);
    Decision d(*this);
    Origin o{current().begin};
    switch (lookahead().kind) {
      case TokenKind::KwEnd:
        consume();
        opt.target = Target::end(o);
        break;
      case TokenKind::LBrace:
        opt.target = Target::inline_state(state_body(), o);
        break;
      case TokenKind::Ident:
        opt.target = Target::named(identifier("state name"), o);
        break;
      default:
        fail({TokenKind::KwEnd, TokenKind::Ident, TokenKind::LBrace});
    }
    return opt;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  std::size_t consulted_ = 0;
  ParseStats* stats_;
};

}  // namespace detail

// Parses protocol text into an AST. Stops at the first syntax error.
inline Result<TypestateAst> parse(std::string_view text,
                                  ParseStats* stats = nullptr) {
  auto tokens = tokenize(text);
  if (!tokens) return Result<TypestateAst>::failure(tokens.diagnostics());
  try {
    detail::Parser p(std::move(tokens).value(), stats);
    return p.protocol();
  } catch (detail::ParseFailure& f) {
    return Result<TypestateAst>::failure(std::move(f.diagnostic));
  }
}

}  // namespace typestate
