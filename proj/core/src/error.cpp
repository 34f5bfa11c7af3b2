#include "pslab/error.hpp"

namespace pslab {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_degree: return "invalid-degree";
    case ErrorCode::out_of_domain: return "out-of-domain";
    case ErrorCode::too_few_variables: return "too-few-variables";
    case ErrorCode::inadmissible_c: return "inadmissible-c";
    case ErrorCode::bound_undefined: return "bound-undefined-at-this-scale";
    case ErrorCode::invalid_exponent: return "invalid-exponent";
    case ErrorCode::undefined_w: return "undefined-w";
    case ErrorCode::inadmissible_b: return "inadmissible-b";
    case ErrorCode::empty_residue_set: return "empty-residue-set";
    case ErrorCode::grid_too_coarse: return "grid-too-coarse";
    case ErrorCode::aliasing_error: return "aliasing-error";
    case ErrorCode::not_translation_invariant: return "not-translation-invariant";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::split_refused: return "split-refused";
    case ErrorCode::enumeration_refused: return "enumeration-refused";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace pslab
