#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sagnac {

// Runtime failure with a stable machine-readable code, e.g. "NonIntegerGap",
// "BranchBoundary", "NegativeDiscriminant", "InsufficientEnergy",
// "TruncationLeak", "StepNonConvergence", "QuadratureNonConvergence",
// "SingularQfim", "InvalidProfile", "InvalidState", "InvalidArgument".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace sagnac
