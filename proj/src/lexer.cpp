// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/lexer.hpp"

#include <cctype>

namespace mirrorvf::lang {

namespace {

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    while (true) {
      skip_trivia();
      SrcLoc loc = here();
      if (eof()) {
        if (in_block_annot_) throw ParseError(loc, "unterminated /*@ annotation");
        out_.push_back({Tok::Eof, "", loc, false});
        return out_;
      }
      lex_one(loc);
    }
  }

private:
  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  bool in_line_annot_ = false;
  bool in_block_annot_ = false;
  std::vector<Token> out_;

  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  SrcLoc here() const { return {line_, col_}; }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
      in_line_annot_ = false;
    } else {
      ++col_;
    }
    return c;
  }

  bool starts(const char* s) const {
    for (std::size_t i = 0; s[i]; ++i)
      if (peek(i) != s[i]) return false;
    return true;
  }
  void consume(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) advance();
  }

  // Whitespace, comments, and annotation delimiters.
  void skip_trivia() {
    while (!eof()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (in_block_annot_ && starts("@*/")) {
        consume(3);
        in_block_annot_ = false;
      } else if (starts("//@")) {
        consume(3);
        in_line_annot_ = true;
      } else if (starts("/*@")) {
        if (in_block_annot_) throw ParseError(here(), "nested /*@ annotation");
        consume(3);
        in_block_annot_ = true;
      } else if (starts("//")) {
        while (!eof() && peek() != '\n') advance();
      } else if (starts("/*")) {
        SrcLoc open = here();
        consume(2);
        while (!starts("*/")) {
          if (eof()) throw ParseError(open, "unterminated comment");
          advance();
        }
        consume(2);
      } else {
        return;
      }
    }
  }

  bool ghost() const { return in_line_annot_ || in_block_annot_; }

  void push(Tok kind, std::string text, SrcLoc loc) {
    out_.push_back({kind, std::move(text), loc, ghost()});
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void lex_one(SrcLoc loc) {
    char c = peek();
    if (ident_start(c)) {
      std::string text;
      while (!eof() && ident_char(peek())) text += advance();
      // Absorb `::segment` sequences into a single path token.
      bool is_path = false;
      while (starts("::") && ident_start(peek(2))) {
        is_path = true;
        text += "::";
        consume(2);
        while (!eof() && ident_char(peek())) text += advance();
      }
      push(is_path ? Tok::Path : Tok::Ident, std::move(text), loc);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
        text += advance();
      push(Tok::Int, std::move(text), loc);
      return;
    }
    switch (c) {
    case '(': advance(); push(Tok::LParen, "(", loc); return;
    case ')': advance(); push(Tok::RParen, ")", loc); return;
    case '{': advance(); push(Tok::LBrace, "{", loc); return;
    case '}': advance(); push(Tok::RBrace, "}", loc); return;
    case ';': advance(); push(Tok::Semi, ";", loc); return;
    case ':': advance(); push(Tok::Colon, ":", loc); return;
    case ',': advance(); push(Tok::Comma, ",", loc); return;
    case '?': advance(); push(Tok::Question, "?", loc); return;
    case '.': advance(); push(Tok::Dot, ".", loc); return;
    case '*': advance(); push(Tok::Star, "*", loc); return;
    case '=':
      advance();
      if (peek() == '=') {
        advance();
        push(Tok::EqEq, "==", loc);
      } else {
        push(Tok::Assign, "=", loc);
      }
      return;
    case '&':
      if (starts("&*&")) {
        consume(3);
        push(Tok::SepAnd, "&*&", loc);
      } else {
        advance();
        push(Tok::Amp, "&", loc);
      }
      return;
    case '-':
      if (starts("->")) {
        consume(2);
        push(Tok::Arrow, "->", loc);
        return;
      }
      break;
    case '|':
      if (starts("|->")) {
        consume(3);
        push(Tok::MapsTo, "|->", loc);
        return;
      }
      break;
    default:
      break;
    }
    throw ParseError(loc, std::string("unexpected character '") + c + "'");
  }
};

} // namespace

std::vector<Token> lex(const std::string& source) {
  return Lexer(source).run();
}

const char* to_string(Tok t) {
  switch (t) {
  case Tok::Ident: return "identifier";
  case Tok::Path: return "qualified path";
  case Tok::Int: return "integer";
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::LBrace: return "'{'";
  case Tok::RBrace: return "'}'";
  case Tok::Semi: return "';'";
  case Tok::Colon: return "':'";
  case Tok::Comma: return "','";
  case Tok::Assign: return "'='";
  case Tok::EqEq: return "'=='";
  case Tok::Question: return "'?'";
  case Tok::Amp: return "'&'";
  case Tok::Star: return "'*'";
  case Tok::Dot: return "'.'";
  case Tok::Arrow: return "'->'";
  case Tok::MapsTo: return "'|->'";
  case Tok::SepAnd: return "'&*&'";
  case Tok::Eof: return "end of input";
  }
  return "?";
}

} // namespace mirrorvf::lang
