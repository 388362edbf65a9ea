#pragma once

#include <stdexcept>
#include <string>

namespace plr {

enum class ErrorKind {
    DomainError,
    NonConvergent,
    BranchAmbiguity,
    TruncationOverflow,
    InvalidPeriodMatrix,
    InvalidBranchData,
    ModulusDegenerate,
    AtBranchPoint,
    PathThroughCut,
    QuadratureFailure,
    RealityViolation,
    ThetaDivisorHit,
    SheetCrossing,
    VanishingCurvature,
    NoRealRoot,
    NoPositiveRoot,
    JacobiFormMismatch,
    NoRootInBracket,
    CriticalPointLost,
    InvalidInput,
    IoError,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Carries the (s,t) location of a denominator zero so grid samplers can skip it.
class ThetaDivisorError : public Error {
public:
    ThetaDivisorError(double s, double t, double modulus)
        : Error(ErrorKind::ThetaDivisorHit,
                "theta(W+D) vanishes at s=" + std::to_string(s) + " t=" + std::to_string(t)),
          s(s), t(t), modulus(modulus) {}
    double s, t, modulus;
};

}  // namespace plr
