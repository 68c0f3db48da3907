#ifndef STICKY_ERROR_H_
#define STICKY_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sticky {

enum class ErrorCode {
  kInvalidArgument,
  kOverlap,
  kRadiiMismatch,
  kConstructionFailed,
  kTooLarge,
  kNotAGroup,
  kNotDivisible,
  kRankDeficient,
  kInfeasibleEndpoint,
  kRelaxationFailed,
  kColorRadiiConflict,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception; `code()` lets callers (the
// CLI in particular) map them to exit statuses without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sticky

#endif  // STICKY_ERROR_H_
