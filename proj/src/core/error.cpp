#include "core/error.hpp"

namespace scriptid {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyDocument: return "EmptyDocument";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kTooFewDocuments: return "TooFewDocuments";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kEmptyCluster: return "EmptyCluster";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kInvalidProfile: return "InvalidProfile";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kConfig: return "Config";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidTarget:
    case ErrorCode::kInvalidK:
    case ErrorCode::kInvalidProfile:
      return true;
    default:
      return false;
  }
}

}  // namespace scriptid
