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

#include "k0forge/cyclotomic.hpp"

#include <string>

#include "k0forge/factor.hpp"
#include "k0forge/primes.hpp"

namespace k0forge::cyclo {

void require_level(unsigned level) {
  if (level <= 2 || !is_prime_small(level))
    throw PreconditionError("cyclotomic level must be an odd prime, got " + std::to_string(level));
}

CyclotomicElement::CyclotomicElement(unsigned level, std::vector<BigInt> coeffs)
    : level_(level) {
  require_level(level);
  // Fold modulo zeta^l = 1, then eliminate zeta^{l-1} = -(1 + ... + zeta^{l-2}).
  std::vector<BigInt> folded(level);
  for (std::size_t i = 0; i < coeffs.size(); ++i) folded[i % level] += coeffs[i];
  const BigInt top = folded[level - 1];
  folded.pop_back();
  if (top != 0)
    for (auto& c : folded) c -= top;
  coeffs_ = std::move(folded);
}

CyclotomicElement::CyclotomicElement(unsigned level, std::vector<BigInt> coeffs, bool)
    : level_(level), coeffs_(std::move(coeffs)) {}

CyclotomicElement CyclotomicElement::zero(unsigned level) {
  require_level(level);
  return CyclotomicElement(level, std::vector<BigInt>(level - 1), true);
}

CyclotomicElement CyclotomicElement::from_int(unsigned level, const BigInt& n) {
  auto z = zero(level);
  z.coeffs_[0] = n;
  return z;
}

CyclotomicElement CyclotomicElement::zeta_power(unsigned level, long k) {
  require_level(level);
  const long l = static_cast<long>(level);
  const auto e = static_cast<std::size_t>(((k % l) + l) % l);
  std::vector<BigInt> c(e + 1);
  c[e] = 1;
  return CyclotomicElement(level, std::move(c));
}

CyclotomicElement CyclotomicElement::real_generator(unsigned level) {
  return zeta_power(level, 1) + zeta_power(level, -1);
}

bool CyclotomicElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

void CyclotomicElement::check_same(const CyclotomicElement& a, const CyclotomicElement& b) {
  if (a.level_ != b.level_) throw PreconditionError("cyclotomic elements of different levels");
}

CyclotomicElement CyclotomicElement::galois(long k) const {
  const long l = static_cast<long>(level_);
  const long kk = ((k % l) + l) % l;
  if (kk == 0) throw PreconditionError("Galois exponent must be prime to the level");
  std::vector<BigInt> c(level_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    c[static_cast<std::size_t>((static_cast<long>(i) * kk) % l)] += coeffs_[i];
  return CyclotomicElement(level_, std::move(c));
}

CyclotomicElement CyclotomicElement::pow(unsigned e) const {
  auto r = one(level_);
  auto b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

CyclotomicElement CyclotomicElement::operator-() const {
  auto r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CyclotomicElement operator+(const CyclotomicElement& a, const CyclotomicElement& b) {
  CyclotomicElement::check_same(a, b);
  auto r = a;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
  return r;
}

CyclotomicElement operator-(const CyclotomicElement& a, const CyclotomicElement& b) {
  CyclotomicElement::check_same(a, b);
  auto r = a;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
  return r;
}

CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b) {
  CyclotomicElement::check_same(a, b);
  const std::size_t l = a.level_;
  // Cyclic convolution modulo zeta^l - 1, then the usual normalization.
  std::vector<BigInt> c(l);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[(i + j) % l] += a.coeffs_[i] * b.coeffs_[j];
  }
  return CyclotomicElement(a.level_, std::move(c));
}

CyclotomicElement operator*(const BigInt& s, const CyclotomicElement& a) {
  auto r = a;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

RealCyclotomicElement::RealCyclotomicElement(unsigned level, std::vector<BigInt> coeffs)
    : level_(level), coeffs_(std::move(coeffs)) {
  require_level(level);
  const std::size_t h = (level - 1) / 2;
  if (coeffs_.size() > h) throw PreconditionError("real cyclotomic element has too many coefficients");
  coeffs_.resize(h);
}

CyclotomicElement RealCyclotomicElement::embed() const {
  const auto c = CyclotomicElement::real_generator(level_);
  auto r = CyclotomicElement::zero(level_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    r = r * c + CyclotomicElement::from_int(level_, *it);
  return r;
}

RealCyclotomicElement RealCyclotomicElement::project(const CyclotomicElement& x) {
  const unsigned l = x.level();
  const std::size_t h = (l - 1) / 2;
  const auto c = CyclotomicElement::real_generator(l);
  IntMatrix basis(l - 1, h);
  auto pw = CyclotomicElement::one(l);
  for (std::size_t j = 0; j < h; ++j) {
    for (std::size_t i = 0; i + 1 < l; ++i) basis(i, j) = pw.coeffs()[i];
    pw = pw * c;
  }
  auto sol = solve_rational(basis, x.coeffs());
  if (!sol) throw PreconditionError("element is not in the real subring");
  std::vector<BigInt> out;
  for (auto& q : *sol) {
    if (q.get_den() != 1) throw PreconditionError("element is not in Z[zeta + zeta^-1]");
    out.push_back(q.get_num());
  }
  RealCyclotomicElement r(l, std::move(out));
  if (!(r.embed() == x)) throw PreconditionError("element is not in the real subring");
  return r;
}

IntPoly real_minimal_polynomial(unsigned level) {
  require_level(level);
  // x^{-h} Phi_l(x) = 1 + sum_{k=1}^{h} (x^k + x^{-k}), and x^k + x^{-k} = D_k(y)
  // with y = x + 1/x, D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1}.
  const unsigned h = (level - 1) / 2;
  const IntPoly y{0, 1};
  IntPoly prev{2}, cur = y;
  IntPoly result = IntPoly{1} + cur;
  for (unsigned k = 2; k <= h; ++k) {
    IntPoly next = y * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
    result = result + cur;
  }
  return result;
}

ExtensionField::Element least_primitive_root_of_unity(const ExtensionField& field, unsigned ell) {
  const BigInt order = field.order() - 1;
  if (!mpz_divisible_ui_p(order.get_mpz_t(), ell))
    throw PreconditionError("field has no primitive root of unity of order " + std::to_string(ell));
  const BigInt cofactor = order / ell;
  const auto one = field.one();
  ExtensionField::Element zeta;
  for (BigInt idx = 1;; ++idx) {
    auto cand = field.pow(field.from_index(idx), cofactor);
    if (cand != one) {
      zeta = cand;
      break;
    }
  }
  auto best = zeta;
  auto pw = zeta;
  for (unsigned k = 2; k < ell; ++k) {
    pw = field.mul(pw, zeta);
    if (field.less(pw, best)) best = pw;
  }
  return best;
}

ResidueFieldSplitting splitting_data(std::uint64_t p, unsigned ell) {
  require_level(ell);
  require_prime(p, "p");
  if (p == ell) throw PreconditionError("ramified prime p = l is not supported");
  ResidueFieldSplitting out;
  out.p = p;
  out.ell = ell;
  out.degree = static_cast<int>(multiplicative_order(p % ell, ell));
  out.factor_count = (ell - 1) / static_cast<unsigned>(out.degree);

  const PrimeField fp(p);
  const ExtensionField model(lex_least_irreducible(fp, out.degree));
  const auto zeta = least_primitive_root_of_unity(model, ell);
  std::vector<bool> seen(ell, false);
  for (unsigned k = 1; k < ell; ++k) {
    if (seen[k]) continue;
    std::uint64_t j = k;
    do {
      seen[j] = true;
      j = j * p % ell;
    } while (j != k);
    out.irreducible_factors.push_back(minimal_polynomial(model, model.pow(zeta, k)));
  }
  sort_polys(out.irreducible_factors);

  auto prod = FpPoly::constant(fp, 1);
  for (const auto& f : out.irreducible_factors) {
    if (f.degree() != out.degree || !is_irreducible(f))
      throw VerificationError("residue factor is not irreducible of the expected degree");
    prod = prod * f;
  }
  if (!(prod == cyclotomic_polynomial(ell).mod_p(fp)))
    throw VerificationError("residue factors do not multiply to the cyclotomic polynomial");
  if (out.irreducible_factors.size() != out.factor_count)
    throw VerificationError("unexpected number of residue factors");
  return out;
}

ResidueMap::ResidueMap(ResidueFieldSplitting splitting) : splitting_(std::move(splitting)) {
  for (const auto& f : splitting_.irreducible_factors) fields_.emplace_back(f);
}

ResidueMap::Image ResidueMap::operator()(const CyclotomicElement& x) const {
  if (x.level() != splitting_.ell) throw PreconditionError("element level does not match splitting");
  const PrimeField fp(splitting_.p);
  std::vector<std::uint64_t> c;
  for (const auto& a : x.coeffs()) c.push_back(fp.from_big(a));
  const FpPoly poly(fp, std::move(c));
  Image out;
  for (const auto& f : fields_) out.push_back(f.from_poly(poly));
  return out;
}

ResidueMap::Image ResidueMap::add(const Image& a, const Image& b) const {
  Image out;
  for (std::size_t i = 0; i < fields_.size(); ++i) out.push_back(fields_[i].add(a[i], b[i]));
  return out;
}

ResidueMap::Image ResidueMap::mul(const Image& a, const Image& b) const {
  Image out;
  for (std::size_t i = 0; i < fields_.size(); ++i) out.push_back(fields_[i].mul(a[i], b[i]));
  return out;
}

ResidueMap::Image ResidueMap::scale(const Image& a, std::uint64_t s) const {
  Image out;
  for (std::size_t i = 0; i < fields_.size(); ++i)
    out.push_back(fields_[i].mul(a[i], fields_[i].from_base(s)));
  return out;
}

bool ResidueMap::is_zero(const Image& a) const {
  for (std::size_t i = 0; i < fields_.size(); ++i)
    if (!fields_[i].is_zero(a[i])) return false;
  return true;
}

ResidueMap::Image reduce_mod_p(const CyclotomicElement& x, std::uint64_t p) {
  return ResidueMap(splitting_data(p, x.level()))(x);
}

}  // namespace k0forge::cyclo
