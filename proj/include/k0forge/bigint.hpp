// Copyright 2026 The k0forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace k0forge {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computed certificate fails its own verification.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt big_pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt big_pow(std::uint64_t base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt big_powm(const BigInt& base, const BigInt& exp, const BigInt& mod) {
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

/// Floor-style residue in [0, m).
inline std::uint64_t big_mod(const BigInt& a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

inline std::string to_string(const BigInt& a) { return a.get_str(); }

inline bool fits_u64(const BigInt& a) {
  return sgn(a) >= 0 && mpz_sizeinbase(a.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& a) {
  if (!fits_u64(a)) throw std::overflow_error("integer does not fit in 64 bits");
  std::uint64_t lo = mpz_getlimbn(a.get_mpz_t(), 0);
  if constexpr (sizeof(mp_limb_t) < 8) {
    lo |= static_cast<std::uint64_t>(mpz_getlimbn(a.get_mpz_t(), 1)) << 32;
  }
  return lo;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

}  // namespace k0forge
