// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/driver.hpp"

#include "mirrorvf/certfile.hpp"
#include "mirrorvf/interp.hpp"
#include "mirrorvf/mirror.hpp"
#include "mirrorvf/parser.hpp"
#include "mirrorvf/resolve.hpp"
#include "mirrorvf/symex.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mirrorvf::cli {

namespace {

bool trace_enabled() {
  const char* v = std::getenv("MIRRORVF_TRACE");
  return v && std::string(v) == "1";
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

/// Parse + resolve with diagnostics; sets exit code on failure.
std::optional<lang::ResolvedProgram> load_program(const std::string& path,
                                                  int& exit_code) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read " << path << "\n";
    exit_code = kExitIo;
    return std::nullopt;
  }
  try {
    return lang::resolve_program(lang::parse_program(*text));
  } catch (const ParseError& e) {
    std::cerr << path << ":" << to_string(e.loc()) << ": error: "
              << e.message() << "\n";
  } catch (const ResolveError& e) {
    std::cerr << path << ":" << to_string(e.loc()) << ": error: "
              << e.message() << "\n";
  }
  exit_code = kExitBadInput;
  return std::nullopt;
}

void flush_trace(const std::string& trace) {
  if (!trace.empty()) std::cerr << trace;
}

} // namespace

int cmd_verify(const std::string& src_path,
               const std::optional<std::string>& emit_path) {
  int code = kExitOk;
  auto rp = load_program(src_path, code);
  if (!rp) return code;

  std::string trace;
  symex::VerifyOptions options;
  if (trace_enabled()) options.trace = &trace;
  try {
    symex::Certificate cert = symex::verify_program(*rp, options);
    flush_trace(trace);
    if (emit_path) {
      std::ofstream out(*emit_path, std::ios::binary);
      out << certificate_to_json(cert);
      if (!out) {
        std::cerr << "error: cannot write " << *emit_path << "\n";
        return kExitIo;
      }
    }
    std::cout << src_path << ": verified " << cert.trees.size()
              << " function(s)\n";
    return kExitOk;
  } catch (const VerifyError& e) {
    flush_trace(trace);
    std::cerr << src_path << ":" << to_string(e.loc())
              << ": verification failed: " << e.message() << "\n";
    if (!e.state().empty()) std::cerr << "  state: " << e.state() << "\n";
    return kExitVerdictFail;
  }
}

int cmd_check(const std::string& src_path, const std::string& cert_path) {
  int code = kExitOk;
  auto rp = load_program(src_path, code);
  if (!rp) return code;

  auto cert_text = read_file(cert_path);
  if (!cert_text) {
    std::cerr << "error: cannot read " << cert_path << "\n";
    return kExitIo;
  }
  symex::Certificate cert;
  try {
    cert = certificate_from_json(*cert_text);
  } catch (const CertFormatError& e) {
    std::cerr << cert_path << ": error: " << e.message() << "\n";
    return kExitBadInput;
  }

  std::string trace;
  mirror::ReplayOptions options;
  if (trace_enabled()) options.trace = &trace;
  try {
    mirror::check_certificate(*rp, cert, options);
    flush_trace(trace);
    std::cout << src_path << ": certificate accepted (" << cert.trees.size()
              << " function(s))\n";
    return kExitOk;
  } catch (const RejectError& e) {
    flush_trace(trace);
    std::cerr << cert_path << ": certificate rejected";
    if (!e.function().empty())
      std::cerr << " in " << e.function() << " at " << e.step_path();
    std::cerr << ": " << e.reason() << "\n";
    return kExitVerdictFail;
  }
}

int cmd_run(const std::string& src_path, std::uint64_t fuel) {
  int code = kExitOk;
  auto rp = load_program(src_path, code);
  if (!rp) return code;
  if (!rp->find_function("main")) {
    std::cerr << src_path << ": error: no main function\n";
    return kExitBadInput;
  }

  interp::Outcome o = interp::run_main(*rp, fuel);
  std::cout << to_string(o) << "\n";
  switch (o.kind) {
  case interp::Outcome::Kind::Returned:
  case interp::Outcome::Kind::Aborted:
    return kExitOk;
  case interp::Outcome::Kind::Ub:
    return kExitUb;
  case interp::Outcome::Kind::OutOfFuel:
    return kExitFuel;
  }
  return kExitOk;
}

} // namespace mirrorvf::cli
