// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mirrorvf/symex.hpp"

#include <string>

namespace mirrorvf::cli {

/// Renders the certificate as deterministic JSON text (stable key order and
/// indentation, trailing newline). serialize then deserialize is the
/// identity, byte for byte, on every certificate this writer produces.
std::string certificate_to_json(const symex::Certificate& cert);

/// Parses and validates certificate text: version 1, 64-hex-char digest,
/// well-formed trees (every path ends in done or success). Throws
/// CertFormatError.
symex::Certificate certificate_from_json(const std::string& text);

} // namespace mirrorvf::cli
