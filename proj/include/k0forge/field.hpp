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

#include <concepts>
#include <cstdint>
#include <random>
#include <string>

#include "k0forge/bigint.hpp"
#include "k0forge/primes.hpp"

namespace k0forge {

/// Arithmetic context a polynomial or matrix is templated on. Fields are
/// cheap handles; elements are plain values interpreted through the handle.
template <class F>
concept FiniteField = requires(const F& f, const typename F::Element& a, std::mt19937_64& rng) {
  { f.zero() } -> std::convertible_to<typename F::Element>;
  { f.one() } -> std::convertible_to<typename F::Element>;
  { f.add(a, a) } -> std::convertible_to<typename F::Element>;
  { f.sub(a, a) } -> std::convertible_to<typename F::Element>;
  { f.neg(a) } -> std::convertible_to<typename F::Element>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Element>;
  { f.inv(a) } -> std::convertible_to<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.less(a, a) } -> std::same_as<bool>;
  { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::Element>;
  { f.random(rng) } -> std::convertible_to<typename F::Element>;
  { f.order() } -> std::convertible_to<BigInt>;
  { f.characteristic() } -> std::convertible_to<std::uint64_t>;
};

/// The prime field F_p, p < 2^32.
class PrimeField {
 public:
  using Element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 32)) throw PreconditionError("prime field modulus too large");
    require_prime(p, "field characteristic");
  }

  std::uint64_t characteristic() const { return p_; }
  BigInt order() const { return from_u64(p_); }
  int degree() const { return 1; }

  Element zero() const { return 0; }
  Element one() const { return 1 % p_; }
  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  Element from_big(const BigInt& v) const { return big_mod(v, p_); }

  Element add(Element a, Element b) const {
    Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return a * b % p_; }
  Element inv(Element a) const {
    if (a == 0) throw PreconditionError("inverse of zero in F_p");
    return inv_mod(a, p_);
  }
  Element pow(Element a, const BigInt& e) const {
    BigInt r = big_powm(from_u64(a), e, from_u64(p_));
    return to_u64(r);
  }
  bool is_zero(Element a) const { return a == 0; }
  bool less(Element a, Element b) const { return a < b; }
  Element random(std::mt19937_64& rng) const { return rng() % p_; }
  std::string str(Element a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

}  // namespace k0forge
