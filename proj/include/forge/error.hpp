#pragma once

#include <stdexcept>
#include <string>

namespace forge {

/// Every failure raised by the library carries a stable kind name so the CLI
/// can map it onto an exit code without string matching on messages.
class ForgeError : public std::runtime_error {
public:
    ForgeError(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define FORGE_ERROR(Name)                                                  \
    struct Name : ForgeError {                                             \
        explicit Name(const std::string& msg) : ForgeError(#Name, msg) {}  \
    }

FORGE_ERROR(NonPlanarRotation);
FORGE_ERROR(DanglingReference);
FORGE_ERROR(NotSimple);
FORGE_ERROR(NotBiconnected);
FORGE_ERROR(CannotTriangulateSimple);
FORGE_ERROR(EqualCapacityCrossing);
FORGE_ERROR(VertexIntervalBroken);
FORGE_ERROR(EdgeUncovered);
FORGE_ERROR(PoleMismatch);
FORGE_ERROR(ShapeMismatch);
FORGE_ERROR(BudgetExceeded);
FORGE_ERROR(CyclicInput);
FORGE_ERROR(DegreeTooHigh);
FORGE_ERROR(IndexOutOfRange);
FORGE_ERROR(PropertyViolated);
FORGE_ERROR(PreconditionN);
FORGE_ERROR(CliqueInvalid);
FORGE_ERROR(DecodeFailure);
FORGE_ERROR(FlowInvalid);
FORGE_ERROR(OrientationInvalid);
FORGE_ERROR(AssignmentInvalid);
FORGE_ERROR(ParseError);

#undef FORGE_ERROR

}  // namespace forge
