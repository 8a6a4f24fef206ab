#pragma once

#include <stdexcept>
#include <string>

namespace dinv {

// Failure classes surfaced by the engine.  The CLI maps these to exit codes:
// input/validation problems -> 1, insufficient truncation -> 2, violated
// internal invariants (including failed exactness of a division) -> 3.
enum class Errc {
  validation,
  dimension_mismatch,
  incompatible_frame,
  incompatible_class,
  invalid_probe,
  not_nilpotent,
  unsupported_surface,
  unsupported_class,
  unsupported_operation,
  characteristic_violation,
  degree_bookkeeping,
  inconsistent_invariants,
  truncation_exceeded,
  order_undetermined,
  divisibility,
  internal_check,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::truncation_exceeded:
    case Errc::order_undetermined:
      return 2;
    case Errc::divisibility:
    case Errc::internal_check:
      return 3;
    default:
      return 1;
  }
}

}  // namespace dinv
