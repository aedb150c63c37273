#pragma once

#include <stdexcept>
#include <string>

namespace bmd {

// Stable error categories; the C API maps these 1:1 onto bmd_status codes.
enum class ErrorCode {
    parse_error = 1,       // malformed spec/system/witness text
    domain_error = 2,      // parameter outside its documented domain
    range_error = 3,       // index/interval/argument outside valid range
    overflow = 4,          // integer family pushed past the 64-bit-safe horizon
    invalid_system = 5,    // interval system violates a_n < b_n <= a_{n+1}
    no_certificate = 6,    // gap liminf too small to build an upper certificate
    no_profile = 7,        // no period p <= p_max fits the gap subsequences
    io_error = 8,          // file sequence could not be read
    invalid_argument = 9,  // bad call-level argument (null handle, empty grid, ...)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::domain_error: return "domain-error";
        case ErrorCode::range_error: return "range-error";
        case ErrorCode::overflow: return "overflow";
        case ErrorCode::invalid_system: return "invalid-system";
        case ErrorCode::no_certificate: return "no-certificate";
        case ErrorCode::no_profile: return "no-profile";
        case ErrorCode::io_error: return "io-error";
        case ErrorCode::invalid_argument: return "invalid-argument";
    }
    return "unknown";
}

}  // namespace bmd
