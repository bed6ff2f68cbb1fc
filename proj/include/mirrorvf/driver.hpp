// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace mirrorvf::cli {

// Exit codes, a stable contract for scripted pipelines:
//   0 success (verify ok / certificate accepted / run finished)
//   1 verification failure or certificate rejection
//   2 parse or resolve error (or malformed certificate)
//   3 I/O error
//   4 undefined behavior during run
//   5 out of fuel during run
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUb = 4;
inline constexpr int kExitFuel = 5;

/// verify: symbolically execute every function; optionally write the
/// certificate on success.
int cmd_verify(const std::string& src_path,
               const std::optional<std::string>& emit_path);

/// check: replay a certificate against a source file.
int cmd_check(const std::string& src_path, const std::string& cert_path);

/// run: execute main concretely under a fuel bound.
int cmd_run(const std::string& src_path, std::uint64_t fuel);

} // namespace mirrorvf::cli
