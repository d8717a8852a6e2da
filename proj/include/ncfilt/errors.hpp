#pragma once

#include <stdexcept>
#include <string>

namespace ncfilt {

// Base class for all library errors. `kind()` is a stable machine-readable
// tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define NCFILT_DEFINE_ERROR(NAME)                                   \
    class NAME : public Error {                                     \
    public:                                                         \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {} \
    }

NCFILT_DEFINE_ERROR(DomainMismatch);
NCFILT_DEFINE_ERROR(DivisionByZero);
NCFILT_DEFINE_ERROR(DenominatorVanishes);
NCFILT_DEFINE_ERROR(NoRootOfUnity);
NCFILT_DEFINE_ERROR(MixedCyclotomicOrders);
NCFILT_DEFINE_ERROR(NotOrientable);
NCFILT_DEFINE_ERROR(DuplicateLhs);
NCFILT_DEFINE_ERROR(ConfluenceNotEstablished);
NCFILT_DEFINE_ERROR(LocalFinitenessViolation);
NCFILT_DEFINE_ERROR(GradedDimensionMismatch);
NCFILT_DEFINE_ERROR(AxiomViolation);
NCFILT_DEFINE_ERROR(NotADerivation);
NCFILT_DEFINE_ERROR(InvalidQMatrix);
NCFILT_DEFINE_ERROR(ZeroParameter);
NCFILT_DEFINE_ERROR(BetaZero);
NCFILT_DEFINE_ERROR(RootsInconsistent);
NCFILT_DEFINE_ERROR(SuperTensorUnsupported);
NCFILT_DEFINE_ERROR(RelationNotPreserved);
NCFILT_DEFINE_ERROR(FiltrationViolated);
NCFILT_DEFINE_ERROR(CapExceeded);
NCFILT_DEFINE_ERROR(OrderNotInvertible);
NCFILT_DEFINE_ERROR(NotLinearizable);
NCFILT_DEFINE_ERROR(UnknownGenerator);
NCFILT_DEFINE_ERROR(UnknownFamily);
NCFILT_DEFINE_ERROR(CertificateMismatch);

#undef NCFILT_DEFINE_ERROR

// Parse errors carry a source location.
class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& expected)
        : Error("ParseError",
                "line " + std::to_string(line) + ", col " + std::to_string(col) +
                    ": expected " + expected),
          line_(line), col_(col), expected_(expected) {}
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    int line_, col_;
    std::string expected_;
};

} // namespace ncfilt
