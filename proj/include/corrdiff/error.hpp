#pragma once

#include <stdexcept>
#include <string>

namespace corrdiff {

enum class ErrorCode {
  InvalidArgument,
  AnalyticKernel,     // Dirac/Constant kernel handed to a numeric-only path
  GridTooCoarse,
  NonUniformLattice,
  ConfigParse,
  ConfigInvariant,
  SchemaMismatch,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace corrdiff
