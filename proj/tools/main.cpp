// SPDX-License-Identifier: Apache-2.0
#include "mirrorvf/driver.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  CLI::App app{"mirrorvf: separation-logic verifier with replayable "
               "hint certificates"};
  app.require_subcommand(1);

  std::string src, cert_path;
  std::string emit;
  std::uint64_t fuel = 100000;

  CLI::App* verify =
      app.add_subcommand("verify", "verify a .vfm file; optionally emit the "
                                   "certificate");
  verify->add_option("src", src, "annotated source file")->required();
  verify->add_option("--emit-cert", emit,
                     "write the certificate here on success");

  CLI::App* check =
      app.add_subcommand("check", "replay a certificate against a source");
  check->add_option("src", src, "annotated source file")->required();
  check->add_option("cert", cert_path, "certificate file")->required();

  CLI::App* run = app.add_subcommand("run", "execute main concretely");
  run->add_option("src", src, "annotated source file")->required();
  run->add_option("--fuel", fuel, "statement budget (default 100000)");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed())
    return mirrorvf::cli::cmd_verify(
        src, emit.empty() ? std::nullopt : std::make_optional(emit));
  if (check->parsed()) return mirrorvf::cli::cmd_check(src, cert_path);
  return mirrorvf::cli::cmd_run(src, fuel);
}
