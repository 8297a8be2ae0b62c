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

#include "doctest.h"
#include "k0forge/ext_field.hpp"
#include "k0forge/numtheory.hpp"
#include "k0forge/primes.hpp"

using namespace k0forge;
using namespace k0forge::numtheory;

namespace {

const std::uint64_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13};

BigInt euclid(BigInt a, BigInt b) {
  while (b != 0) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

BigInt power(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

// ord_l(p) == q^k, checked with two modular exponentiations.
bool has_order(std::uint64_t p, const BigInt& ell, std::uint64_t q, unsigned k) {
  BigInt r;
  BigInt e = big_pow(from_u64(q), k);
  mpz_powm(r.get_mpz_t(), BigInt(from_u64(p)).get_mpz_t(), e.get_mpz_t(), ell.get_mpz_t());
  if (r != 1) return false;
  if (k == 0) return true;
  e /= from_u64(q);
  mpz_powm(r.get_mpz_t(), BigInt(from_u64(p)).get_mpz_t(), e.get_mpz_t(), ell.get_mpz_t());
  return r != 1;
}

}  // namespace

TEST_CASE("gcd lemma: stated cases") {
  auto a = gcd_lemma_check(3, 2, 2);
  CHECK(a.lhs == 2);
  CHECK(cyclotomic_quotient(3, 2, 2) == 10);
  auto b = gcd_lemma_check(2, 3, 1);
  CHECK(b.lhs == 1);
  CHECK(b.rhs == 1);
  CHECK(gcd_lemma_check(5, 2, 3).lhs == 2);
  CHECK_THROWS_AS(gcd_lemma_check(4, 2, 1), PreconditionError);
  CHECK_THROWS_AS(gcd_lemma_check(3, 2, 0), PreconditionError);
}

TEST_CASE("gcd lemma: exhaustive grid against hand-rolled Euclid") {
  for (auto p : kSmallPrimes)
    for (auto q : kSmallPrimes)
      for (unsigned n = 1; n <= 4; ++n) {
        auto r = gcd_lemma_check(p, q, n);
        const BigInt lower = power(p, power(q, n - 1).get_ui()) - 1;
        const BigInt top = power(p, power(q, n).get_ui()) - 1;
        CHECK(r.lhs == euclid(top / lower, lower));
        CHECK(r.rhs == euclid(BigInt(static_cast<unsigned long>(q)), lower));
        CHECK(r.holds());
      }
}

TEST_CASE("find_ell: stated cases") {
  auto a = find_ell({2, 3, 1});
  REQUIRE(a.certificate);
  CHECK(a.certificate->ell == 7);
  CHECK(a.certificate->ord == 3);
  CHECK(a.certificate->n_used == 1);

  auto b = find_ell({2, 2, 2});
  REQUIRE(b.certificate);
  CHECK(b.certificate->ell == 5);
  CHECK(b.certificate->ord == 4);

  // 3^2 - 1 = 8 has no odd prime factor; the level is raised to n = 2.
  auto c = find_ell({3, 2, 1});
  REQUIRE(c.certificate);
  CHECK(c.certificate->n_used == 2);
  CHECK(c.certificate->ell == 5);
  CHECK_FALSE(c.note.empty());
}

TEST_CASE("find_ell certificates over the grid") {
  const auto sieve = primes_up_to(200000);
  for (std::uint64_t p : {2, 3, 5, 7})
    for (std::uint64_t q : {2, 3, 5, 7})
      for (unsigned n = 1; n <= 2; ++n) {
        auto r = find_ell({p, q, n});
        REQUIRE(r.certificate);
        const auto& c = *r.certificate;
        CHECK(c.valid());
        CHECK(has_order(p, c.ell, q, c.n_used));
        CHECK(is_probable_prime(c.ell));
        if (c.splitting_agrees) CHECK(*c.splitting_agrees);
        // When fully factored, no smaller prime has the same order.
        if (c.smallest)
          for (auto l : sieve) {
            if (BigInt(static_cast<unsigned long>(l)) >= c.ell) break;
            if (l == p || l == 2) continue;
            CHECK_FALSE(has_order(p, BigInt(static_cast<unsigned long>(l)), q, c.n_used));
          }
        auto cc = containment_check(c, {p, q, n});
        CHECK(cc.contained);
      }
}

TEST_CASE("inconclusive when the factoring budget is exhausted") {
  // Level 7 for (2, 2): the quotient is 2^64 + 1 = 274177 * 67280421310721.
  FindEllOptions starved;
  starved.trial_bound = 10;
  starved.rho_iterations = 0;
  auto r = find_ell({2, 2, 7}, starved);
  CHECK(r.inconclusive());
  CHECK(r.note.find("inconclusive") != std::string::npos);
  auto full = find_ell({2, 2, 7});
  REQUIRE(full.certificate);
  CHECK(full.certificate->ell == 274177);
  CHECK(full.certificate->smallest);
}

TEST_CASE("valuation escalation") {
  for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{3, 2}, {5, 2}, {7, 3}}) {
    for (unsigned n = 1; n <= 10; ++n) {
      const unsigned v = valuation(cyclotomic_quotient(p, q, n), q);
      if (q == 3 || n >= 2) CHECK(v == 1);
    }
  }
  auto r = valuation_escalation(3, 2, 1);
  CHECK(r.n == 2);
  CHECK(r.quotient_valuation == 1);
  CHECK(r.predicted_valuation == 1);
  REQUIRE(r.certificate);
  CHECK(r.certificate->ell == 5);
  auto s = valuation_escalation(7, 3, 1);
  CHECK(s.n == 1);
  REQUIRE(s.certificate);
  CHECK(s.certificate->ell == 19);
  CHECK(valuation_escalation(5, 2, 3).n == 3);
  CHECK_THROWS_AS(valuation_escalation(5, 3, 1), PreconditionError);
}

TEST_CASE("containment: stated cases") {
  auto c7 = find_ell({2, 3, 1}).certificate.value();
  auto r = containment_check(c7, {2, 3, 1});
  REQUIRE(r.contained);
  const auto& w = *r.witness;
  CHECK(w.target_polynomial == fp_poly(PrimeField(2), {1, 1, 0, 1}));
  // Exhaustive: the roots of x^3 + x + 1 among the 8 elements of F_2[y]/(h).
  ExtensionField h(w.residue_factor);
  int roots_found = 0;
  bool witness_is_root = false;
  for (unsigned idx = 0; idx < 8; ++idx) {
    auto a = h.from_index(idx);
    auto v = h.add(h.add(h.mul(h.mul(a, a), a), a), h.one());
    if (h.is_zero(v)) {
      ++roots_found;
      if (a == h.from_poly(w.root)) witness_is_root = true;
    }
  }
  CHECK(roots_found == 3);
  CHECK(witness_is_root);

  auto c5 = find_ell({2, 2, 2}).certificate.value();
  CHECK(containment_check(c5, {2, 2, 0}).contained);  // F_2
  CHECK(containment_check(c5, {2, 2, 1}).contained);  // F_4 inside F_16
  auto no = containment_check(c5, {2, 3, 1});
  CHECK_FALSE(no.contained);
  CHECK_FALSE(no.witness);
}
