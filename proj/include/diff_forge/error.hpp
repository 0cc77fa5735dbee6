#pragma once

#include <stdexcept>
#include <string>

namespace diff_forge {

/// A precondition on an argument was violated (non-prime characteristic,
/// divisibility failure, malformed structure).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file or JSON document does not match the expected schema. `path` is a
/// JSON-pointer-like location of the offending value.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace diff_forge
