#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace presilt {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

enum class ErrCode {
  BadArgument,
  Parse,
  NotAdmissible,
  FieldTooSmall,
  BudgetExceeded,
  PropertyFailed,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrCode code() const { return code_; }

private:
  ErrCode code_;
};

[[noreturn]] inline void fail(ErrCode c, const std::string& msg) { throw Error(c, msg); }

// Theory preconditions guaranteed by the underlying results. A violation is an
// internal error, not user error.
inline void require_internal(bool ok, const char* what) {
  if (!ok) fail(ErrCode::Internal, std::string("internal invariant violated: ") + what);
}

}  // namespace presilt
