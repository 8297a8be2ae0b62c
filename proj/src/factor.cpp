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

#include "k0forge/factor.hpp"

#include <map>

namespace k0forge {

namespace {

// f(x) = g(x^p) = g(x)^p over F_p; returns g.
FpPoly pth_root(const FpPoly& f) {
  const auto p = f.field().characteristic();
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
  return FpPoly(f.field(), std::move(c));
}

// Yun-style squarefree decomposition in characteristic p.
void squarefree_parts(const FpPoly& f, int scale, std::map<int, FpPoly>& out) {
  const auto& fld = f.field();
  if (f.degree() < 1) return;
  auto d = f.derivative();
  if (d.is_zero()) {
    squarefree_parts(pth_root(f), scale * static_cast<int>(fld.characteristic()), out);
    return;
  }
  auto c = gcd(f, d);
  auto w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    auto y = gcd(w, c);
    auto z = w / y;
    if (z.degree() > 0) {
      auto [it, inserted] = out.try_emplace(i * scale, z.monic());
      if (!inserted) it->second = it->second * z.monic();
    }
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0)
    squarefree_parts(pth_root(c), scale * static_cast<int>(fld.characteristic()), out);
}

}  // namespace

std::vector<FpFactor> factor(const FpPoly& f) {
  if (f.is_zero()) throw PreconditionError("factorization of the zero polynomial");
  std::map<int, FpPoly> parts;
  squarefree_parts(f.monic(), 1, parts);
  std::mt19937_64 rng(0x6b30666f726765ULL);
  std::vector<FpFactor> out;
  for (const auto& [mult, part] : parts) {
    for (const auto& [prod, d] : distinct_degree_factorization(part)) {
      for (auto& g : equal_degree_factorization(prod, d, rng)) out.push_back({g, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
    if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
    return poly_less(a.factor, b.factor);
  });
  return out;
}

std::vector<int> factorization_pattern(const FpPoly& f) {
  std::vector<int> out;
  for (const auto& [g, m] : factor(f))
    for (int i = 0; i < m; ++i) out.push_back(g.degree());
  std::sort(out.begin(), out.end());
  return out;
}

FpPoly lex_least_irreducible(const PrimeField& f, int d) {
  if (d < 1) throw PreconditionError("irreducible degree must be positive");
  const auto p = f.characteristic();
  const BigInt count = big_pow(p, static_cast<unsigned long>(d));
  for (BigInt idx = 0; idx < count; ++idx) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(d) + 1);
    BigInt rest = idx;
    for (int i = 0; i < d; ++i) {
      c[static_cast<std::size_t>(i)] = big_mod(rest, p);
      rest /= static_cast<unsigned long>(p);
    }
    c[static_cast<std::size_t>(d)] = 1;
    if (d > 1 && c[0] == 0) continue;
    FpPoly g(f, std::move(c));
    if (is_irreducible(g)) return g;
  }
  throw VerificationError("no irreducible polynomial found");
}

}  // namespace k0forge
