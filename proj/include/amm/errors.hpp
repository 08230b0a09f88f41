#pragma once

#include <stdexcept>
#include <string>

namespace amm {

// Violated validity condition of a model operation. Each code names the
// precondition that failed, so callers can report the exact cause.
enum class ErrorCode {
    insufficient_balance,
    uninitialized_amm,
    already_initialized,
    reserve_drained,
    same_token,
    division_by_zero,
    unknown_price,
    invalid_initial_state,
};

const char* error_name(ErrorCode code);

class AmmError : public std::runtime_error {
public:
    AmmError(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail),
          code_(code),
          detail_(detail) {}

    ErrorCode code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace amm
