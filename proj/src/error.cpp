#include "hetpca/error.hpp"

namespace hetpca {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyMixture: return "EmptyMixture";
    case ErrorCode::ProportionSumInvalid: return "ProportionSumInvalid";
    case ErrorCode::NonpositiveProportion: return "NonpositiveProportion";
    case ErrorCode::NegativeVariance: return "NegativeVariance";
    case ErrorCode::InvalidProportions: return "InvalidProportions";
    case ErrorCode::InvalidModelParams: return "InvalidModelParams";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::PoleEvaluation: return "PoleEvaluation";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NoTransition: return "NoTransition";
    case ErrorCode::ZeroTrueSubspace: return "ZeroTrueSubspace";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace hetpca
