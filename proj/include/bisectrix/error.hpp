#pragma once

#include <stdexcept>
#include <string>

namespace bisectrix {

enum class ErrorCode {
    ParallelLines,
    DegenerateTriangle,
    DegenerateApex,
    PointsOnLine,
    OppositeSides,
    CoincidentPoints,
    VerticalPair,
    DomainViolation,
    NotApplicable,
    LeadingZero,
    IsoscelesDegenerate,
    HypothesisViolation,
    NoTransversal,
    NonGeometricReport,
    SolverFailure,
    BadInput,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
    throw Error(c, msg);
}

}  // namespace bisectrix
