#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace genuslab {

enum class ErrorKind {
    NonPositive,
    NotSquarefree,
    DegenerateRadicand,
    NotFundamental,
    PrecisionFailure,
    OracleBoundExceeded,
    EvenRadicand,
    DegenerateField,
    NotTotallyPositive,
    NotTotallyReal,
    ShapeMismatch,
    Overflow,
    CacheError,
    InvalidArgument,
    InternalInconsistency,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind, so that front ends can
/// map validation errors and broken internal identities to different exits.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string const & what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

    bool is_internal() const noexcept { return kind_ == ErrorKind::InternalInconsistency; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const & what)
{
    throw Error(kind, what);
}

} // namespace genuslab
