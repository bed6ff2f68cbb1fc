// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testsupport {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string testdata(const std::string& name) {
  return std::string(TESTDATA_DIR) + "/" + name;
}

inline std::string fig1_source() { return read_file(testdata("reverse.vfm")); }

} // namespace testsupport
