#pragma once

#include <stdexcept>
#include <string>

namespace nbt {

// Stable error codes; the C API maps these one-to-one onto nbt_status values.
enum class Errc {
  parse_error = 1,
  invalid_involution,
  dangling_reference,
  validation,
  parity_mismatch,
  half_loop_unsupported,
  not_a_bead,
  component_swallowed,
  root_bracket_failure,
  tolerance_ambiguous,
  cap_unverified,
  too_large,
  ill_conditioned,
  generator_not_positive,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace nbt
