#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "typestate/diagnostic.hpp"
#include "typestate/result.hpp"

namespace typestate {

enum class TokenKind {
  KwTypestate,
  KwEnd,
  Ident,
  LBrace,
  RBrace,
  LAngle,
  RAngle,
  LParen,
  RParen,
  Colon,
  Comma,
  Equals,
  Eof,
};

inline std::string_view describe(TokenKind k) {
  switch (k) {
    case TokenKind::KwTypestate: return "'typestate'";
    case TokenKind::KwEnd: return "'end'";
    case TokenKind::Ident: return "identifier";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LAngle: return "'<'";
    case TokenKind::RAngle: return "'>'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Comma: return "','";
    case TokenKind::Equals: return "'='";
    case TokenKind::Eof: return "end of input";
  }
  return "?";
}

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string text;
  SourcePos begin;
  SourcePos end;  // one past the last byte
};

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$';
}
inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_keyword(std::string_view s) {
  return s == "typestate" || s == "end";
}

// Plain identifier: state, method, label and protocol names.
inline bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0]) || is_keyword(s)) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

// Type identifier: dot-separated qualified name, e.g. java.lang.Boolean.
inline bool is_type_identifier(std::string_view s) {
  std::size_t start = 0;
  while (true) {
    auto dot = s.find('.', start);
    auto part = s.substr(start, dot == std::string_view::npos
                                    ? std::string_view::npos
                                    : dot - start);
    if (!is_identifier(part)) return false;
    if (dot == std::string_view::npos) return true;
    start = dot + 1;
  }
}

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_.offset >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    auto i = pos_.offset + ahead;
    return i < text_.size() ? text_[i] : '\0';
  }
  const SourcePos& pos() const { return pos_; }

  void advance() {
    if (text_[pos_.offset] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++pos_.offset;
  }

  std::string_view slice(const SourcePos& from) const {
    return text_.substr(from.offset, pos_.offset - from.offset);
  }

 private:
  std::string_view text_;
  SourcePos pos_;
};

}  // namespace detail

// Splits protocol text into tokens. Whitespace, `//` line comments and
// `/* */` block comments separate tokens and are dropped.
inline Result<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  detail::Cursor cur(text);

  while (true) {
    // Skip trivia.
    while (!cur.done()) {
      char c = cur.peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        cur.advance();
      } else if (c == '/' && cur.peek(1) == '/') {
        while (!cur.done() && cur.peek() != '\n') cur.advance();
      } else if (c == '/' && cur.peek(1) == '*') {
        SourcePos open = cur.pos();
        cur.advance();
        cur.advance();
        while (!cur.done() && !(cur.peek() == '*' && cur.peek(1) == '/'))
          cur.advance();
        if (cur.done())
          return Result<std::vector<Token>>::failure(
              error(code::Lex, "unterminated block comment", open));
        cur.advance();
        cur.advance();
      } else {
        break;
      }
    }

    SourcePos begin = cur.pos();
    if (cur.done()) {
      tokens.push_back({TokenKind::Eof, "", begin, begin});
      return tokens;
    }

    char c = cur.peek();
    TokenKind kind;
    switch (c) {
      case '{': kind = TokenKind::LBrace; break;
      case '}': kind = TokenKind::RBrace; break;
      case '<': kind = TokenKind::LAngle; break;
      case '>': kind = TokenKind::RAngle; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ':': kind = TokenKind::Colon; break;
      case ',': kind = TokenKind::Comma; break;
      case '=': kind = TokenKind::Equals; break;
      default:
        kind = TokenKind::Ident;
        break;
    }

    if (kind != TokenKind::Ident) {
      cur.advance();
      tokens.push_back({kind, std::string(cur.slice(begin)), begin, cur.pos()});
      continue;
    }

    if (!is_ident_start(c)) {
      char shown[16];
      auto byte = static_cast<unsigned char>(c);
      if (byte >= 0x20 && byte < 0x7f)
        std::snprintf(shown, sizeof shown, "'%c'", c);
      else
        std::snprintf(shown, sizeof shown, "byte 0x%02x", byte);
      return Result<std::vector<Token>>::failure(
          error(code::Lex, std::string("unexpected character ") + shown, begin));
    }

    while (true) {
      while (is_ident_char(cur.peek())) cur.advance();
      if (cur.peek() == '.' && is_ident_start(cur.peek(1))) {
        cur.advance();
        continue;
      }
      if (cur.peek() == '.') {
        cur.advance();
        return Result<std::vector<Token>>::failure(
            error(code::Lex, "qualified name must continue after '.'",
                  cur.pos().offset < text.size() ? cur.pos() : begin));
      }
      break;
    }
    std::string word(cur.slice(begin));
    if (word == "typestate") kind = TokenKind::KwTypestate;
    else if (word == "end") kind = TokenKind::KwEnd;
    tokens.push_back({kind, std::move(word), begin, cur.pos()});
  }
}

}  // namespace typestate
