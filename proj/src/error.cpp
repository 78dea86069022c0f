#include "corrdiff/error.hpp"

namespace corrdiff {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::AnalyticKernel: return "analytic-kernel";
    case ErrorCode::GridTooCoarse: return "grid-too-coarse";
    case ErrorCode::NonUniformLattice: return "non-uniform-lattice";
    case ErrorCode::ConfigParse: return "config-parse";
    case ErrorCode::ConfigInvariant: return "config-invariant";
    case ErrorCode::SchemaMismatch: return "schema-mismatch";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

}  // namespace corrdiff
