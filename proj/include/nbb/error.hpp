#pragma once

#include <stdexcept>
#include <string>

namespace nbb {

// Mirrors nbb_status in the C header; keep the numeric values in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kIo = 2,
  kParse = 3,
  kIllegalCharacter = 4,
  kLengthMismatch = 5,
  kDomain = 6,
  kUndefinedPosterior = 7,
  kNotOnBoundary = 8,
  kDegenerateModel = 9,
  kRankDeficient = 10,
  kInternal = 99,
};

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

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace nbb
