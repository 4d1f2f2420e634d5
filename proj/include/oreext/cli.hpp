#pragma once

#include <string>
#include <vector>

namespace oreext::cli {

struct Outcome {
  int exit_code = 0;  // 0 pass / not_applicable, 1 fail, 2 invalid input
  std::string out;
  std::string err;
};

/// Runs one command line (without the program name). Never throws.
Outcome run(const std::vector<std::string>& args);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

}  // namespace oreext::cli
