#ifndef QEP_ERRORS_HPP
#define QEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qep {

// Every recoverable failure maps to one of these codes. The CLI translates
// them to exit codes; library users can catch Error and switch on code().
enum class ErrorCode {
  NonHermitian,
  NotPSD,
  NotNormalized,
  SingularInput,
  NotPartition,
  NotUnitary,
  DimensionMismatch,
  LengthMismatch,
  ZeroProbability,
  ZeroEvidence,
  WeightMismatch,
  SupportViolation,
  NonCommutingSupports,
  InfiniteDivergence,
  Infeasible,
  UnknownTheorem,
  InvalidInput,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::NotPartition: return "NotPartition";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::ZeroEvidence: return "ZeroEvidence";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::NonCommutingSupports: return "NonCommutingSupports";
    case ErrorCode::InfiniteDivergence: return "InfiniteDivergence";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::UnknownTheorem: return "UnknownTheorem";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

}  // namespace qep

#endif  // QEP_ERRORS_HPP
