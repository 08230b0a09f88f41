#include "amm/errors.hpp"

namespace amm {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::insufficient_balance: return "InsufficientBalance";
        case ErrorCode::uninitialized_amm: return "UninitializedAmm";
        case ErrorCode::already_initialized: return "AlreadyInitialized";
        case ErrorCode::reserve_drained: return "ReserveDrained";
        case ErrorCode::same_token: return "SameToken";
        case ErrorCode::division_by_zero: return "DivisionByZero";
        case ErrorCode::unknown_price: return "UnknownPrice";
        case ErrorCode::invalid_initial_state: return "InvalidInitialState";
    }
    return "UnknownError";
}

} // namespace amm
