#include "fuskit/error.hpp"

namespace fuskit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotAPermutation: return "NotAPermutation";
    case ErrorCode::kOrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::kNotASubgroup: return "NotASubgroup";
    case ErrorCode::kProductNotASubgroup: return "ProductNotASubgroup";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kNotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::kNotInjective: return "NotInjective";
    case ErrorCode::kImageEscapesCodomain: return "ImageEscapesCodomain";
    case ErrorCode::kDoesNotGenerate: return "DoesNotGenerate";
    case ErrorCode::kConjugateEscapes: return "ConjugateEscapes";
    case ErrorCode::kDifferentCarrier: return "DifferentCarrier";
    case ErrorCode::kMorphismNotInSystem: return "MorphismNotInSystem";
    case ErrorCode::kNotAnIsomorphism: return "NotAnIsomorphism";
    case ErrorCode::kNotSaturated: return "NotSaturated";
    case ErrorCode::kCenterJoinFailure: return "CenterJoinFailure";
    case ErrorCode::kDecompositionNotFound: return "DecompositionNotFound";
    case ErrorCode::kNotASubgroupOfAut: return "NotASubgroupOfAut";
    case ErrorCode::kCarrierNotStronglyClosed: return "CarrierNotStronglyClosed";
    case ErrorCode::kNotNormalInP: return "NotNormalInP";
    case ErrorCode::kNotStronglyClosed: return "NotStronglyClosed";
    case ErrorCode::kImageNotAFusionSystem: return "ImageNotAFusionSystem";
    case ErrorCode::kNotAFunctor: return "NotAFunctor";
    case ErrorCode::kSylowMismatch: return "SylowMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace fuskit
