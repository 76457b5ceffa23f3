#include "odf/error.hpp"

namespace odf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DivisionByNonUnit: return "DivisionByNonUnit";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::QuantifierUnsupported: return "QuantifierUnsupported";
    case ErrorCode::HigherDerivationInGermModel: return "HigherDerivationInGermModel";
    case ErrorCode::IdentityInGenerators: return "IdentityInGenerators";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::NonCommutingDerivations: return "NonCommutingDerivations";
    case ErrorCode::InvalidCondition: return "InvalidCondition";
    case ErrorCode::NotCoherent: return "NotCoherent";
    case ErrorCode::SingularInitialData: return "SingularInitialData";
    case ErrorCode::PremiseFails: return "PremiseFails";
    case ErrorCode::SeparantVanishes: return "SeparantVanishes";
    case ErrorCode::ZeroPolynomialWithStrictSign: return "ZeroPolynomialWithStrictSign";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace odf
