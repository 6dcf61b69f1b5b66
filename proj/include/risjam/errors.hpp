#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace risjam {

// Scenario or result file could not be read/written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario file is syntactically malformed or uses unknown/ill-typed keys.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix arguments with incompatible shapes.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configuration violates one or more invariants; carries all of them.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string msg = "invalid scenario:";
    for (const auto& s : v) msg += "\n  - " + s;
    return msg;
  }

  std::vector<std::string> violations_;
};

}  // namespace risjam
