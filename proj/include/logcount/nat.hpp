#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace logcount {

// Unbounded natural number. All string positions, vertex labels and counts
// are Nat; negative values never appear in a Nat by convention.
using Nat = mpz_class;

// Signed unbounded integer, used by the native-arithmetic oracle side of
// the dual-route checks and by the decoded value of an encoded integer.
using Int = mpz_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: schema violations, broken preconditions, unparsable text.
struct BadInput : Error {
  using Error::Error;
};

// An exhaustive enumeration outgrew its node budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Two independent computation routes disagreed. Carries the counterexample.
struct MismatchError : Error {
  using Error::Error;
};

inline Nat nat_pow(const Nat& base, std::uint64_t exp) {
  Nat r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

inline Nat nat_isqrt(const Nat& x) {
  Nat r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline bool fits_u64(const Nat& x) {
  return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Nat& x, const char* what = "value") {
  if (!fits_u64(x))
    throw BadInput(std::string(what) + " out of machine range: " + x.get_str());
  std::uint64_t lo = mpz_getlimbn(x.get_mpz_t(), 0);
  return lo;
}

inline Nat nat_from_u64(std::uint64_t v) {
  Nat r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

}  // namespace logcount
