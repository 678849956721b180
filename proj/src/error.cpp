#include "qpow/error.hpp"

#include <cmath>

namespace qpow {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Range: return "range error";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::DegenerateRatio: return "degenerate ratio";
    case ErrorCode::SingularFit: return "singular fit";
    case ErrorCode::NoSolution: return "no solution";
    case ErrorCode::Capacity: return "capacity exceeded";
    case ErrorCode::Stall: return "stalled";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Io: return "I/O error";
    }
    return "unknown error";
}

void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

double checked(double value, const char* what) {
    if (!std::isfinite(value)) raise(ErrorCode::Range, std::string(what) + ": result is not finite");
    return value;
}

} // namespace qpow
