// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/diag.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mirrorvf::lang {

enum class Tok {
  Ident,    // also keywords; text() distinguishes
  Path,     // qualified identifier containing ::
  Int,      // digit sequence
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semi,
  Colon,
  Comma,
  Assign,   // =
  EqEq,     // ==
  Question, // ?
  Amp,      // &
  Star,     // *
  Dot,      // .
  Arrow,    // ->
  MapsTo,   // |->
  SepAnd,   // &*&
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  SrcLoc loc;
  bool ghost = false; // inside //@ ... or /*@ ... @*/
};

/// Tokenizes source text. Annotation delimiters dissolve into a ghost flag
/// on the tokens they contained; ordinary comments are skipped.
std::vector<Token> lex(const std::string& source);

const char* to_string(Tok t);

} // namespace mirrorvf::lang
