#include "cscforge/errors.hpp"
#include "cscforge/sphere_point.hpp"

#include <cmath>

namespace cscforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotASimplePole: return "NotASimplePole";
    case ErrorCode::DuplicatePole: return "DuplicatePole";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::EvalAtPole: return "EvalAtPole";
    case ErrorCode::BadInitialValue: return "BadInitialValue";
    case ErrorCode::BasePointIsPole: return "BasePointIsPole";
    case ErrorCode::HypothesesFailed: return "HypothesesFailed";
    case ErrorCode::PathTooCloseToPole: return "PathTooCloseToPole";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::DegenerateHyperbolicPoint: return "DegenerateHyperbolicPoint";
    case ErrorCode::GridTouchesSingularity: return "GridTouchesSingularity";
    case ErrorCode::AnnulusContainsSingularity: return "AnnulusContainsSingularity";
    case ErrorCode::NonConicalSingularityPresent: return "NonConicalSingularityPresent";
    case ErrorCode::NotMonomialIdentity: return "NotMonomialIdentity";
    case ErrorCode::ZeroMu: return "ZeroMu";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::ResidueMismatch: return "ResidueMismatch";
    case ErrorCode::InvalidCaseData: return "InvalidCaseData";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::DegenerateA: return "DegenerateA";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double chart_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinity() && b.is_infinity()) return 0.0;
  if (a.is_infinity()) return b.value() == Complex{} ? INFINITY : 1.0 / std::abs(b.value());
  if (b.is_infinity()) return a.value() == Complex{} ? INFINITY : 1.0 / std::abs(a.value());
  return std::abs(a.value() - b.value());
}

}  // namespace cscforge
