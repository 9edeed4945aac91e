#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wiresafe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix that had to be invertible was not.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would visit more objects than allowed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, std::uint64_t required, std::uint64_t budget)
      : Error(what + ": requires " + std::to_string(required) + " enumerated objects, budget is " +
              std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Caps on exhaustive work. Every verification routine takes one of these.
struct Budget {
  /// Objects enumerated by a single rank-metric verification call.
  std::uint64_t enumeration = std::uint64_t{1} << 24;
  /// (message, randomness) pairs per wiretap set in a joint-distribution audit.
  std::uint64_t joint = std::uint64_t{1} << 20;
  /// Wiretap sets per network audit.
  std::uint64_t wiretap_sets = 100000;

  /// All three caps set to the same value.
  static Budget uniform(std::uint64_t cap) { return Budget{cap, cap, cap}; }
};

/// Throws BudgetExceeded when `required` exceeds `cap`. A `required` of
/// UINT64_MAX stands for "overflowed while counting".
inline void require_budget(const char* what, std::uint64_t required, std::uint64_t cap) {
  if (required > cap) throw BudgetExceeded(what, required, cap);
}

/// Saturating 2^e.
inline std::uint64_t pow2_saturating(std::uint64_t e) {
  return e >= 64 ? UINT64_MAX : (std::uint64_t{1} << e);
}

/// Saturating a*b.
inline std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace wiresafe
