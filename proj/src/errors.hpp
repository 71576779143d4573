#pragma once

#include <stdexcept>
#include <string>

namespace ptkr {

/// Error categories; the C API maps these 1:1 onto ptkr_status codes.
enum class ErrorCode {
    invalid_argument,
    kick_overflow,
    degenerate_spectrum,
    norm_overflow,
    eigensolver_failure,
    no_exponential_regime,
    io_error,
    bad_checkpoint,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace ptkr
