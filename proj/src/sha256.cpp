// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace mirrorvf {

Digest sha256(const std::string& data) {
  Digest out{};
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                  nullptr) ||
      len != out.size())
    throw std::runtime_error("SHA-256 computation failed");
  return out;
}

std::string to_hex(const Digest& d) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint8_t b : d) {
    out += digits[b >> 4];
    out += digits[b & 0xf];
  }
  return out;
}

bool from_hex(const std::string& hex, Digest& out) {
  if (hex.size() != 64) return false;
  auto nibble = [](char c, int& v) {
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else return false;
    return true;
  };
  for (std::size_t i = 0; i < 32; ++i) {
    int hi = 0, lo = 0;
    if (!nibble(hex[2 * i], hi) || !nibble(hex[2 * i + 1], lo)) return false;
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return true;
}

} // namespace mirrorvf
