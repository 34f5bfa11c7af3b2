#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pslab {

/// Precondition and domain failures raised by the library. Each code has a
/// stable kebab-case name that the CLI prints and tests match on.
enum class ErrorCode {
  invalid_degree,
  out_of_domain,
  too_few_variables,
  inadmissible_c,
  bound_undefined,
  invalid_exponent,
  undefined_w,
  inadmissible_b,
  empty_residue_set,
  grid_too_coarse,
  aliasing_error,
  not_translation_invariant,
  degenerate,
  split_refused,
  enumeration_refused,
  invalid_argument,
  overflow,
  parse_error,
  io_error,
};

std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace pslab
