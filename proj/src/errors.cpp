#include "gradelast/errors.hpp"

namespace gradelast {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::SingularSystem: return "singular-system";
    case ErrorCode::FredholmIncompatible: return "fredholm-incompatibility";
    case ErrorCode::CoercivityFailure: return "coercivity-failure";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Internal: return "internal-failure";
    case ErrorCode::Io: return "io-error";
    case ErrorCode::Config: return "config-error";
  }
  return "unknown";
}

}  // namespace gradelast
