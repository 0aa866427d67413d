#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fuskit {

enum class ErrorCode {
  kNotAPermutation,
  kOrderCapExceeded,
  kNotASubgroup,
  kProductNotASubgroup,
  kNotNormal,
  kNotAHomomorphism,
  kNotInjective,
  kImageEscapesCodomain,
  kDoesNotGenerate,
  kConjugateEscapes,
  kDifferentCarrier,
  kMorphismNotInSystem,
  kNotAnIsomorphism,
  kNotSaturated,
  kCenterJoinFailure,
  kDecompositionNotFound,
  kNotASubgroupOfAut,
  kCarrierNotStronglyClosed,
  kNotNormalInP,
  kNotStronglyClosed,
  kImageNotAFusionSystem,
  kNotAFunctor,
  kSylowMismatch,
  kParseError,
  kValidationError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fuskit
