#pragma once

#include <stdexcept>
#include <string>

namespace landau {

/// Base error. `what()` reads "module.Kind: message" so the CLI can surface
/// errors with module-qualified names.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string kind, const std::string &message)
        : std::runtime_error(module + "." + kind + ": " + message),
          module_(std::move(module)), kind_(std::move(kind)) {}

    [[nodiscard]] const std::string &module() const noexcept { return module_; }
    [[nodiscard]] const std::string &kind() const noexcept { return kind_; }

private:
    std::string module_;
    std::string kind_;
};

#define LANDAU_DEFINE_ERROR(Name, Module)                                       \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string &message) : Error(Module, #Name, message) {} \
    };

LANDAU_DEFINE_ERROR(SingularPoint, "kernel")
LANDAU_DEFINE_ERROR(InvalidParams, "kernel")
LANDAU_DEFINE_ERROR(Overflow, "phase_state")
LANDAU_DEFINE_ERROR(InvalidGrid, "phase_state")
LANDAU_DEFINE_ERROR(NegativeInput, "coefficients")
LANDAU_DEFINE_ERROR(CflViolation, "stepper")
LANDAU_DEFINE_ERROR(NanDetected, "stepper")
LANDAU_DEFINE_ERROR(ClippedMassExceeded, "stepper")
LANDAU_DEFINE_ERROR(GammaOutOfRange, "diagnostics")
LANDAU_DEFINE_ERROR(OrderTooHigh, "diagnostics")
LANDAU_DEFINE_ERROR(InsufficientPoints, "diagnostics")
LANDAU_DEFINE_ERROR(NonPositiveValue, "diagnostics")
LANDAU_DEFINE_ERROR(GridMismatch, "diagnostics")
LANDAU_DEFINE_ERROR(ConstraintViolated, "maxwellian")
LANDAU_DEFINE_ERROR(ZeroMass, "maxwellian")
LANDAU_DEFINE_ERROR(QuadratureFailure, "oracles")
LANDAU_DEFINE_ERROR(BranchMismatch, "oracles")
LANDAU_DEFINE_ERROR(ConfigInvalid, "cli")
LANDAU_DEFINE_ERROR(IoError, "cli")

#undef LANDAU_DEFINE_ERROR

/// Structured-text parse failure with the offending line (1-based).
class ParseError : public Error {
public:
    ParseError(int line, const std::string &message)
        : Error("cli", "ParseError", "line " + std::to_string(line) + ": " + message), line_(line) {}

    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace landau
