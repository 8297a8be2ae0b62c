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
#include <map>
#include <optional>
#include <vector>

#include "k0forge/bigint.hpp"

namespace k0forge {

/// Trial division up to sqrt(n). Desk-scale inputs only.
bool is_prime_small(std::uint64_t n);

/// Throws PreconditionError naming `what` unless n is prime.
void require_prime(std::uint64_t n, const char* what);

/// BPSW via GMP; exact below 2^64.
bool is_probable_prime(const BigInt& n);

/// All primes <= bound (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

/// Least d >= 1 with a^d = 1 mod m; requires gcd(a, m) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/// Least d >= 1 with a^d = 1 mod m, for big moduli whose group order
/// divides `order_multiple` (whose prime factorization is supplied).
BigInt multiplicative_order(const BigInt& a, const BigInt& m,
                            const std::map<BigInt, unsigned>& order_multiple);

/// p-adic valuation of a nonzero integer.
unsigned valuation(BigInt n, std::uint64_t p);

/// Outcome of a bounded factorization attempt.
struct Factorization {
  std::map<BigInt, unsigned> primes;  // proven (probable-)prime factors
  BigInt unfactored = 1;              // composite cofactor left when the budget ran out
  bool complete() const { return unfactored == 1; }
};

/// Trial division up to `trial_bound`, then Brent's variant of Pollard rho
/// with at most `rho_iterations` steps per attempt.
Factorization factor_integer(const BigInt& n, std::uint64_t trial_bound,
                             std::uint64_t rho_iterations = 2'000'000);

/// One nontrivial factor of a composite n, or nullopt when the budget is exhausted.
std::optional<BigInt> pollard_brent(const BigInt& n, std::uint64_t max_iterations,
                                    std::uint64_t seed = 1);

}  // namespace k0forge
