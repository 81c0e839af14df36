#ifndef AINFTY_ERRORS_HPP
#define AINFTY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ainfty {

enum class ErrKind {
    Parse,
    DegreeMismatch,
    DanglingId,
    WindowNotClosed,
    NotClosed,
    NotClosedDegreeZero,
    NonFiniteWordSpace,
    CapTooSmall,
    NoStabilization,
    NotAdamsConnected,
    InfiniteSlice,
    NegativeAdamsDegree,
    ObjectMismatch,
    SquareNotCommuting,
    IncompatibleSplitting,
    NotStrict,
    NotBijectiveOnHoms,
    IllDefinedInducedOp,
    HypothesisFailed,
    NotAHomotopy,
    Internal,
};

const char* err_kind_name(ErrKind k);

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg)
        : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& msg)
        : Error(ErrKind::Parse, "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

} // namespace ainfty

#endif
