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

// Factorization of polynomials over finite fields: Rabin's irreducibility
// test, distinct-degree and Cantor-Zassenhaus equal-degree splitting, and
// root extraction. Splitting uses a fixed-seed generator and every result
// is sorted, so outputs are reproducible.

#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "k0forge/poly.hpp"

namespace k0forge {

/// x^{q^k} mod m where q is the field order.
template <FiniteField Field>
Poly<Field> frobenius_x(const Poly<Field>& m, int k) {
  const auto& f = m.field();
  const BigInt q = f.order();
  auto h = Poly<Field>::x(f) % m;
  for (int i = 0; i < k; ++i) h = powmod(h, q, m);
  return h;
}

template <FiniteField Field>
bool is_irreducible(const Poly<Field>& poly) {
  const int n = poly.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  auto m = poly.monic();
  const auto& f = m.field();
  const auto x = Poly<Field>::x(f);
  const BigInt q = f.order();
  // h_k = x^{q^k} mod m for k = 0..n.
  std::vector<Poly<Field>> h{x % m};
  for (int k = 1; k <= n; ++k) h.push_back(powmod(h.back(), q, m));
  if (!((h[static_cast<std::size_t>(n)] - x) % m).is_zero()) return false;
  for (auto r : prime_divisors(static_cast<std::uint64_t>(n))) {
    auto g = gcd(h[static_cast<std::size_t>(n / static_cast<int>(r))] - x, m);
    if (g.degree() != 0) return false;
  }
  return true;
}

/// Splits a monic squarefree polynomial into (product of all irreducible
/// factors of degree d, d) pairs.
template <FiniteField Field>
std::vector<std::pair<Poly<Field>, int>> distinct_degree_factorization(Poly<Field> f) {
  std::vector<std::pair<Poly<Field>, int>> out;
  const auto& fld = f.field();
  const auto x = Poly<Field>::x(fld);
  const BigInt q = fld.order();
  auto h = x % f;
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, q, f);
    auto g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

namespace detail {

template <FiniteField Field>
Poly<Field> random_poly(const Field& fld, int below_degree, std::mt19937_64& rng) {
  std::vector<typename Field::Element> c;
  for (int i = 0; i < below_degree; ++i) c.push_back(fld.random(rng));
  return Poly<Field>(fld, std::move(c));
}

// A polynomial whose gcd with f is a proper factor with probability >= 1/2.
template <FiniteField Field>
Poly<Field> splitting_candidate(const Poly<Field>& f, int d, std::mt19937_64& rng) {
  const auto& fld = f.field();
  auto r = random_poly(fld, f.degree(), rng);
  if (fld.characteristic() == 2) {
    // Absolute trace to F_2 of F_{q^d}: sum of r^{2^i}, i < k*d.
    const BigInt q = fld.order();
    const auto k = static_cast<int>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
    auto t = r % f;
    auto acc = t;
    for (int i = 1; i < k * d; ++i) {
      t = mulmod(t, t, f);
      acc = acc + t;
    }
    return acc;
  }
  BigInt e = (big_pow(fld.order(), static_cast<unsigned long>(d)) - 1) / 2;
  return powmod(r, e, f) - Poly<Field>::constant(fld, fld.one());
}

}  // namespace detail

/// Splits a monic squarefree f, all of whose irreducible factors have
/// degree d, into those factors.
template <FiniteField Field>
std::vector<Poly<Field>> equal_degree_factorization(const Poly<Field>& f, int d,
                                                    std::mt19937_64& rng) {
  if (f.degree() == d) return {f.monic()};
  if (f.degree() % d != 0) throw PreconditionError("degree is not a multiple of the factor degree");
  for (;;) {
    auto g = gcd(detail::splitting_candidate(f, d, rng), f);
    if (g.degree() <= 0 || g.degree() == f.degree()) continue;
    auto left = equal_degree_factorization(g, d, rng);
    auto right = equal_degree_factorization(f / g, d, rng);
    left.insert(left.end(), right.begin(), right.end());
    return left;
  }
}

template <FiniteField Field>
void sort_polys(std::vector<Poly<Field>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return poly_less(a, b); });
}

/// Distinct roots of f in its coefficient field, sorted.
template <FiniteField Field>
std::vector<typename Field::Element> roots(const Poly<Field>& f) {
  const auto& fld = f.field();
  if (f.is_zero()) throw PreconditionError("roots of the zero polynomial");
  if (f.degree() < 1) return {};
  auto m = f.monic();
  auto h = powmod(Poly<Field>::x(fld), fld.order(), m);
  auto g = gcd(h - Poly<Field>::x(fld), m);
  std::vector<typename Field::Element> out;
  if (g.degree() < 1) return out;
  std::mt19937_64 rng(0x6b30666f726765ULL);
  for (const auto& lin : equal_degree_factorization(g, 1, rng))
    out.push_back(fld.neg(lin.coeff(0)));
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return fld.less(a, b); });
  return out;
}

template <FiniteField Field>
bool has_root(const Poly<Field>& f) {
  const auto& fld = f.field();
  if (f.degree() < 1) return f.is_zero();
  auto m = f.monic();
  auto h = powmod(Poly<Field>::x(fld), fld.order(), m);
  return gcd(h - Poly<Field>::x(fld), m).degree() > 0;
}

struct FpFactor {
  FpPoly factor;
  int multiplicity;
};

/// Complete factorization over F_p into monic irreducibles with
/// multiplicities, sorted by `poly_less`. The leading coefficient is dropped.
std::vector<FpFactor> factor(const FpPoly& f);

/// Degrees of the irreducible factors (with multiplicity), ascending.
std::vector<int> factorization_pattern(const FpPoly& f);

/// The monic irreducible of degree d over F_p that is least when its
/// coefficients are read from x^{d-1} down to x^0.
FpPoly lex_least_irreducible(const PrimeField& f, int d);

}  // namespace k0forge
