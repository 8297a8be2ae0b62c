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

#include <random>

#include "doctest.h"
#include "k0forge/ext_field.hpp"
#include "k0forge/factor.hpp"
#include "k0forge/fp_linalg.hpp"
#include "k0forge/intpoly.hpp"
#include "k0forge/primes.hpp"

using namespace k0forge;

namespace {

// Brute force: a monic polynomial of degree d over F_p is irreducible iff no
// monic polynomial of degree 1..d/2 divides it.
bool irreducible_by_division(const FpPoly& f) {
  const auto& fld = f.field();
  const auto p = fld.characteristic();
  const int d = f.degree();
  for (int k = 1; k <= d / 2; ++k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint64_t> c(static_cast<std::size_t>(k) + 1);
      auto rest = idx;
      for (int i = 0; i < k; ++i) {
        c[static_cast<std::size_t>(i)] = rest % p;
        rest /= p;
      }
      c[static_cast<std::size_t>(k)] = 1;
      if ((f % FpPoly(fld, c)).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("primality and orders") {
  CHECK(is_prime_small(2));
  CHECK(is_prime_small(104729));
  CHECK_FALSE(is_prime_small(1));
  CHECK_FALSE(is_prime_small(91));
  CHECK(first_primes(10000).back() == 104729);
  CHECK(multiplicative_order(2, 7) == 3);
  CHECK(multiplicative_order(19, 5) == 2);
  CHECK(multiplicative_order(3, 5) == 4);
  for (std::uint64_t m : {7, 11, 13, 31, 97}) {
    for (std::uint64_t a = 1; a < m; ++a) {
      std::uint64_t k = 1, x = a % m;
      while (x != 1) {
        x = x * a % m;
        ++k;
      }
      CHECK(multiplicative_order(a, m) == k);
    }
  }
  CHECK(valuation(BigInt(80), 2) == 4);
  CHECK_THROWS_AS(require_prime(15, "n"), PreconditionError);
}

TEST_CASE("factor_integer recovers products of known primes") {
  BigInt n = BigInt("1000000007") * BigInt("998244353") * 12;
  auto f = factor_integer(n, 1000);
  CHECK(f.complete());
  CHECK(f.primes.at(BigInt(2)) == 2);
  CHECK(f.primes.at(BigInt(3)) == 1);
  CHECK(f.primes.at(BigInt("1000000007")) == 1);
  CHECK(f.primes.at(BigInt("998244353")) == 1);
}

TEST_CASE("polynomial division and gcd over F_p") {
  PrimeField f(7);
  auto a = fp_poly(f, {1, 2, 3, 4});
  auto b = fp_poly(f, {5, 0, 1});
  auto [q, r] = divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  auto g = gcd(a * b, b * fp_poly(f, {1, 1}));
  CHECK(g == b.monic());
  auto [h, s, t] = ext_gcd(a, b);
  CHECK(s * a + t * b == h);
}

TEST_CASE("Rabin irreducibility agrees with exhaustive division") {
  for (std::uint64_t p : {2, 3, 5}) {
    PrimeField f(p);
    std::mt19937_64 rng(p);
    for (int trial = 0; trial < 60; ++trial) {
      const int d = 1 + static_cast<int>(rng() % 5);
      std::vector<std::uint64_t> c(static_cast<std::size_t>(d) + 1);
      for (auto& x : c) x = rng() % p;
      c.back() = 1;
      FpPoly g(f, c);
      CHECK(is_irreducible(g) == irreducible_by_division(g));
    }
  }
}

TEST_CASE("lexicographically least irreducibles") {
  CHECK(lex_least_irreducible(PrimeField(2), 3) == fp_poly(PrimeField(2), {1, 1, 0, 1}));
  CHECK(lex_least_irreducible(PrimeField(2), 2) == fp_poly(PrimeField(2), {1, 1, 1}));
  CHECK(lex_least_irreducible(PrimeField(3), 2) == fp_poly(PrimeField(3), {1, 0, 1}));
}

TEST_CASE("complete factorization multiplies back") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    PrimeField f(p);
    std::mt19937_64 rng(100 + p);
    for (int trial = 0; trial < 40; ++trial) {
      const int d = 1 + static_cast<int>(rng() % 9);
      std::vector<std::uint64_t> c(static_cast<std::size_t>(d) + 1);
      for (auto& x : c) x = rng() % p;
      c.back() = 1;
      FpPoly g(f, c);
      auto prod = FpPoly::constant(f, 1);
      for (const auto& [h, m] : factor(g)) {
        CHECK(is_irreducible(h));
        for (int i = 0; i < m; ++i) prod = prod * h;
      }
      CHECK(prod == g);
    }
  }
  // (x+1)^4 (x^2+x+1) over F_2 exercises the p-th root branch.
  PrimeField f2(2);
  auto x1 = fp_poly(f2, {1, 1});
  auto q = fp_poly(f2, {1, 1, 1});
  auto fs = factor(x1 * x1 * x1 * x1 * q);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor == x1);
  CHECK(fs[0].multiplicity == 4);
  CHECK(fs[1].factor == q);
}

TEST_CASE("roots over prime and extension fields") {
  PrimeField f(19);
  auto g = fp_poly(f, {-1, 1, 1});  // x^2 + x - 1
  auto rs = roots(g);
  REQUIRE(rs.size() == 2);
  for (auto r : rs) CHECK(g.eval(r) == 0);
  CHECK(roots(fp_poly(PrimeField(3), {1, 0, 1})).empty());

  ExtensionField f8(fp_poly(PrimeField(2), {1, 1, 0, 1}));
  // x^3 + x + 1 has all three of its roots in F_8.
  Poly<ExtensionField> h(f8, {f8.one(), f8.one(), f8.zero(), f8.one()});
  auto hr = roots(h);
  CHECK(hr.size() == 3);
  for (const auto& r : hr) CHECK(f8.is_zero(h.eval(r)));
}

TEST_CASE("extension field arithmetic") {
  ExtensionField f9(fp_poly(PrimeField(3), {1, 0, 1}));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    auto a = f9.random(rng);
    auto b = f9.random(rng);
    auto c = f9.random(rng);
    CHECK(f9.mul(a, f9.add(b, c)) == f9.add(f9.mul(a, b), f9.mul(a, c)));
    if (!f9.is_zero(a)) CHECK(f9.mul(a, f9.inv(a)) == f9.one());
    CHECK(f9.pow(a, f9.order()) == a);
  }
  auto g = f9.generator();
  CHECK(minimal_polynomial(f9, g) == f9.modulus());
  CHECK(minimal_polynomial(f9, f9.from_base(2)) == fp_poly(PrimeField(3), {1, 1}));
  CHECK(f9.element_degree(f9.from_base(2)) == 1);
  CHECK(f9.element_degree(g) == 2);
}

TEST_CASE("F_p matrices: rank, nullspace, Jordan type") {
  const std::uint64_t p = 5;
  FpMatrix m(3, 3);
  m << 1, 2, 3, 0, 1, 4, 1, 3, 2;  // row3 = row1 + row2 mod 5
  CHECK(rank_mod(m, p) == 2);
  auto ns = nullspace_mod(m, p);
  CHECK(ns.cols() == 1);
  CHECK(matmul_mod(m, ns, p).isZero());
  FpMatrix n = FpMatrix::Zero(5, 5);
  n(0, 1) = 1;
  n(1, 2) = 1;
  n(3, 4) = 1;
  CHECK(nilpotent_jordan_type(n, p) == std::vector<int>{3, 2});
  CHECK_THROWS(nilpotent_jordan_type(FpMatrix::Identity(2, 2), p));
}

TEST_CASE("integer polynomials and matrices") {
  CHECK(cyclotomic_polynomial(5) == IntPoly{1, 1, 1, 1, 1});
  CHECK(cyclotomic_polynomial(12) == IntPoly{1, 0, -1, 0, 1});
  IntPoly a{3, 0, 2, 1};
  IntPoly b{-1, 1, 1};
  auto [q, r] = divmod_monic(a, b);
  CHECK(q * b + r == a);
  IntMatrix m(3, 3);
  long vals[9] = {2, 0, 1, 1, 3, 2, 1, 1, 1};
  for (int i = 0; i < 9; ++i) m.data[static_cast<std::size_t>(i)] = vals[i];
  // Cofactor expansion: 2(3-2) - 0 + 1(1-3) = 0.
  CHECK(determinant(m) == 0);
  CHECK(rank(m) == 2);
  IntMatrix u(2, 2);
  u(0, 0) = 2;
  u(0, 1) = 1;
  u(1, 0) = 1;
  u(1, 1) = 1;
  auto ui = unimodular_inverse(u);
  CHECK(ui(0, 0) == 1);
  CHECK(ui(0, 1) == -1);
  CHECK(ui(1, 1) == 2);
  CHECK(IntPoly{-1, 1, 1}.str() == "x^2 + x - 1");
}
