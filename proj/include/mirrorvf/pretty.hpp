// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/ast.hpp"

namespace mirrorvf::lang {

std::string to_string(const Expr& e);
std::string to_string(const Pat& p);
std::string to_string(const Assertion& a);

/// One-line rendering of a statement (no trailing newline); nested blocks
/// are flattened with spaces. Used by traces and diagnostics.
std::string to_string(const Stmt& s);

/// Canonical re-printable surface form; parse(pretty_print(parse(x)))
/// equals parse(x).
std::string pretty_print(const Program& p);

} // namespace mirrorvf::lang
