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

#include "k0forge/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <string>

namespace k0forge {

bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

void require_prime(std::uint64_t n, const char* what) {
  if (!is_prime_small(n))
    throw PreconditionError(std::string(what) + " = " + std::to_string(n) + " is not prime");
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  if (count == 0) return {};
  // p_n < n (ln n + ln ln n) for n >= 6.
  double n = static_cast<double>(std::max<std::size_t>(count, 6));
  auto bound = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 10;
  auto ps = primes_up_to(bound);
  ps.resize(count);
  return ps;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw PreconditionError("element not invertible modulo " + std::to_string(m));
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  if (std::gcd(a % m, m) != 1)
    throw PreconditionError("multiplicative order requires a unit");
  // The order divides the exponent of (Z/m)^*, which divides phi(m).
  std::uint64_t phi = m;
  for (auto q : prime_divisors(m)) phi = phi / q * (q - 1);
  std::uint64_t ord = phi;
  for (auto q : prime_divisors(phi))
    while (ord % q == 0 && pow_mod(a, ord / q, m) == 1) ord /= q;
  return ord;
}

BigInt multiplicative_order(const BigInt& a, const BigInt& m,
                            const std::map<BigInt, unsigned>& order_multiple) {
  BigInt ord = 1;
  for (const auto& [q, e] : order_multiple) ord *= big_pow(q, e);
  if (big_powm(a, ord, m) != 1 % m)
    throw PreconditionError("supplied exponent is not a multiple of the order");
  for (const auto& [q, e] : order_multiple) {
    for (unsigned i = 0; i < e; ++i) {
      BigInt cand = ord / q;
      if (big_powm(a, cand, m) != 1 % m) break;
      ord = cand;
    }
  }
  return ord;
}

unsigned valuation(BigInt n, std::uint64_t p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  unsigned v = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::optional<BigInt> pollard_brent(const BigInt& n, std::uint64_t max_iterations,
                                    std::uint64_t seed) {
  if (mpz_even_p(n.get_mpz_t())) return BigInt(2);
  BigInt c = from_u64(seed);
  for (int attempt = 0; attempt < 8; ++attempt, c += 1) {
    BigInt y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1, iterations = 0;
    const std::uint64_t m = 128;
    auto f = [&](BigInt& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1 && iterations < max_iterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          f(y);
          q = q * abs(x - y) % n;
        }
        g = big_gcd(q, n);
        k += m;
        iterations += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        f(ys);
        g = big_gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (iterations >= max_iterations) return std::nullopt;
  }
  return std::nullopt;
}

Factorization factor_integer(const BigInt& n_in, std::uint64_t trial_bound,
                             std::uint64_t rho_iterations) {
  if (n_in <= 0) throw PreconditionError("factor_integer needs a positive integer");
  Factorization out;
  BigInt n = n_in;
  for (std::uint64_t d = 2; d <= trial_bound && BigInt(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++out.primes[BigInt(d)];
    }
  }
  std::vector<BigInt> pending;
  if (n > 1) pending.push_back(n);
  BigInt leftover = 1;
  while (!pending.empty()) {
    BigInt m = pending.back();
    pending.pop_back();
    if (is_probable_prime(m)) {
      ++out.primes[m];
      continue;
    }
    auto d = pollard_brent(m, rho_iterations);
    if (!d) {
      leftover *= m;
      continue;
    }
    pending.push_back(*d);
    pending.push_back(m / *d);
  }
  out.unfactored = leftover;
  return out;
}

}  // namespace k0forge
