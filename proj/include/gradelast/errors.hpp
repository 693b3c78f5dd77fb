#pragma once

#include <stdexcept>
#include <string>

namespace gradelast {

enum class ErrorCode {
  InvalidArgument = 1,
  SingularSystem,
  FredholmIncompatible,
  CoercivityFailure,
  Unsupported,
  Internal,
  Io,
  Config,
};

const char* to_string(ErrorCode code);

/// Base exception of the library. The code survives the C boundary as a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error(ErrorCode::InvalidArgument, w) {}
};
struct SingularSystem : Error {
  explicit SingularSystem(const std::string& w) : Error(ErrorCode::SingularSystem, w) {}
};
struct FredholmIncompatible : Error {
  explicit FredholmIncompatible(const std::string& w) : Error(ErrorCode::FredholmIncompatible, w) {}
};
struct CoercivityFailure : Error {
  explicit CoercivityFailure(const std::string& w) : Error(ErrorCode::CoercivityFailure, w) {}
};
struct Unsupported : Error {
  explicit Unsupported(const std::string& w) : Error(ErrorCode::Unsupported, w) {}
};
struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ErrorCode::Internal, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::Config, w) {}
};

}  // namespace gradelast
