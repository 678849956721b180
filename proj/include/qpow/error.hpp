#ifndef QPOW_ERROR_HPP
#define QPOW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qpow {

enum class ErrorCode {
    InvalidArgument,
    Range,
    Domain,
    DegenerateRatio,
    SingularFit,
    NoSolution,
    Capacity,
    Stall,
    Parse,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the engines carries one of the codes above so the
// C boundary can translate it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

inline void require(bool cond, const char* what) {
    if (!cond) raise(ErrorCode::InvalidArgument, what);
}

// Throws a range error when a computed value overflowed or went NaN.
double checked(double value, const char* what);

} // namespace qpow

#endif // QPOW_ERROR_HPP
