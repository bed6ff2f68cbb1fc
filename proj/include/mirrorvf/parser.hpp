// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/ast.hpp"

#include <string>

namespace mirrorvf::lang {

/// Parses annotated source text into a program AST. Ghost content lives in
/// `//@ ...` and `/*@ ... @*/` annotations; `unsafe` markers, `mut`
/// bindings, type ascriptions, and pointer casts are accepted and erased.
/// Throws ParseError with position and an expected-token message.
Program parse_program(const std::string& source);

} // namespace mirrorvf::lang
