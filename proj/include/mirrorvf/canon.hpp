// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/ast.hpp"

namespace mirrorvf::lang {

/// Whitespace-free, fully parenthesized encoding of the AST. Deterministic:
/// two programs encode equally iff they are structurally equal (source
/// locations and formatting excluded). Feeds the certificate digest and the
/// structural-equality helpers below.
std::string canonical_encoding(const Program& p);
std::string canonical_encoding(const ResolvedProgram& rp);

bool ast_equal(const Program& a, const Program& b);

} // namespace mirrorvf::lang
