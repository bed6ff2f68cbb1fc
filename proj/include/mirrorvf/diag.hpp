// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mirrorvf {

/// 1-based source position; {0,0} means "no location".
struct SrcLoc {
  int line = 0;
  int col = 0;

  bool valid() const { return line > 0; }
  friend bool operator==(const SrcLoc&, const SrcLoc&) = default;
};

inline std::string to_string(SrcLoc loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.col);
}

/// Syntax error with position and an expected-token style message.
class ParseError : public std::runtime_error {
public:
  ParseError(SrcLoc loc, std::string msg)
      : std::runtime_error(to_string(loc) + ": " + msg),
        loc_(loc), msg_(std::move(msg)) {}

  SrcLoc loc() const { return loc_; }
  const std::string& message() const { return msg_; }

private:
  SrcLoc loc_;
  std::string msg_;
};

/// Name-resolution / well-formedness error.
class ResolveError : public std::runtime_error {
public:
  ResolveError(SrcLoc loc, std::string msg)
      : std::runtime_error(to_string(loc) + ": " + msg),
        loc_(loc), msg_(std::move(msg)) {}

  SrcLoc loc() const { return loc_; }
  const std::string& message() const { return msg_; }

private:
  SrcLoc loc_;
  std::string msg_;
};

/// Verification failure. Carries the failing goal and a rendering of the
/// symbolic state so the CLI can print a trace-style diagnostic.
class VerifyError : public std::runtime_error {
public:
  VerifyError(SrcLoc loc, std::string msg, std::string goal = {},
              std::string state = {})
      : std::runtime_error(to_string(loc) + ": " + msg),
        loc_(loc), msg_(std::move(msg)), goal_(std::move(goal)),
        state_(std::move(state)) {}

  SrcLoc loc() const { return loc_; }
  const std::string& message() const { return msg_; }
  const std::string& goal() const { return goal_; }
  const std::string& state() const { return state_; }

private:
  SrcLoc loc_;
  std::string msg_, goal_, state_;
};

/// Certificate rejected by the replay checker.
class RejectError : public std::runtime_error {
public:
  RejectError(std::string function, std::string step_path, std::string reason)
      : std::runtime_error(function + " @ " + step_path + ": " + reason),
        function_(std::move(function)), step_path_(std::move(step_path)),
        reason_(std::move(reason)) {}

  const std::string& function() const { return function_; }
  const std::string& step_path() const { return step_path_; }
  const std::string& reason() const { return reason_; }

private:
  std::string function_, step_path_, reason_;
};

/// Malformed certificate file (bad JSON, bad tree shape, bad digest string).
class CertFormatError : public std::runtime_error {
public:
  explicit CertFormatError(std::string msg)
      : std::runtime_error(msg), msg_(std::move(msg)) {}

  const std::string& message() const { return msg_; }

private:
  std::string msg_;
};

} // namespace mirrorvf
