#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scriptid {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyDocument,
  kEmptySequence,
  kOutOfRange,
  kTooFewDocuments,
  kInvalidTarget,
  kInvalidK,
  kEmptyCluster,
  kUnknownClass,
  kInvalidProfile,
  kIo,
  kParse,
  kConfig,
};

std::string_view error_code_name(ErrorCode code);

// Config-type failures map to CLI exit code 2, everything else data-related to 3.
bool is_config_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace scriptid
