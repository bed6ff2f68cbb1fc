// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace mirrorvf {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(const std::string& data);
std::string to_hex(const Digest& d);

/// Parses 64 hex chars; returns false on bad length or non-hex input.
bool from_hex(const std::string& hex, Digest& out);

} // namespace mirrorvf
