#include "plr/error.hpp"

namespace plr {

const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::TruncationOverflow: return "TruncationOverflow";
    case ErrorKind::InvalidPeriodMatrix: return "InvalidPeriodMatrix";
    case ErrorKind::InvalidBranchData: return "InvalidBranchData";
    case ErrorKind::ModulusDegenerate: return "ModulusDegenerate";
    case ErrorKind::AtBranchPoint: return "AtBranchPoint";
    case ErrorKind::PathThroughCut: return "PathThroughCut";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::RealityViolation: return "RealityViolation";
    case ErrorKind::ThetaDivisorHit: return "ThetaDivisorHit";
    case ErrorKind::SheetCrossing: return "SheetCrossing";
    case ErrorKind::VanishingCurvature: return "VanishingCurvature";
    case ErrorKind::NoRealRoot: return "NoRealRoot";
    case ErrorKind::NoPositiveRoot: return "NoPositiveRoot";
    case ErrorKind::JacobiFormMismatch: return "JacobiFormMismatch";
    case ErrorKind::NoRootInBracket: return "NoRootInBracket";
    case ErrorKind::CriticalPointLost: return "CriticalPointLost";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace plr
