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

#include "k0forge/ext_field.hpp"

#include <sstream>

#include "k0forge/fp_linalg.hpp"

namespace k0forge {

ExtensionField::ExtensionField(FpPoly modulus)
    : data_(std::make_shared<const Data>(Data{modulus.field(), modulus})) {
  if (modulus.degree() < 1) throw PreconditionError("extension modulus must have degree >= 1");
  if (modulus.lead() != 1) throw PreconditionError("extension modulus must be monic");
}

ExtensionField::Element ExtensionField::generator() const {
  if (degree() == 1) return from_base(base().neg(modulus().coeff(0)));
  Element e = zero();
  e[1] = 1;
  return e;
}

ExtensionField::Element ExtensionField::from_base(std::uint64_t c) const {
  Element e = zero();
  e[0] = c % characteristic();
  return e;
}

ExtensionField::Element ExtensionField::from_poly(const FpPoly& p) const {
  auto r = p % modulus();
  Element e = zero();
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) e[i] = r.coeffs()[i];
  return e;
}

ExtensionField::Element ExtensionField::add(const Element& a, const Element& b) const {
  Element r(a.size());
  const auto& f = base();
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

ExtensionField::Element ExtensionField::sub(const Element& a, const Element& b) const {
  Element r(a.size());
  const auto& f = base();
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

ExtensionField::Element ExtensionField::neg(const Element& a) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = base().neg(a[i]);
  return r;
}

ExtensionField::Element ExtensionField::mul(const Element& a, const Element& b) const {
  const auto d = static_cast<std::size_t>(degree());
  const auto p = characteristic();
  // Accumulate unreduced; entries stay below 2d * p^2 < 2^64 for p < 2^28.
  std::vector<std::uint64_t> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j] % p;
  }
  for (auto& c : prod) c %= p;
  const auto& m = modulus().coeffs();
  for (std::size_t k = prod.size(); k-- > d;) {
    const auto c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::size_t j = 0; j < d; ++j)
      prod[k - d + j] = (prod[k - d + j] + (p - m[j]) * c) % p;
  }
  prod.resize(d);
  return prod;
}

ExtensionField::Element ExtensionField::inv(const Element& a) const {
  if (is_zero(a)) throw PreconditionError("inverse of zero in extension field");
  auto [g, s, t] = ext_gcd(to_poly(a), modulus());
  if (g.degree() != 0) throw PreconditionError("extension modulus is reducible");
  return from_poly(s);
}

ExtensionField::Element ExtensionField::pow(const Element& a, const BigInt& e) const {
  Element r = one();
  Element b = a;
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, b);
  }
  return r;
}

bool ExtensionField::is_zero(const Element& a) const {
  for (auto c : a)
    if (c) return false;
  return true;
}

bool ExtensionField::less(const Element& a, const Element& b) const {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

ExtensionField::Element ExtensionField::random(std::mt19937_64& rng) const {
  Element e = zero();
  for (auto& c : e) c = rng() % characteristic();
  return e;
}

ExtensionField::Element ExtensionField::from_index(const BigInt& index) const {
  Element e = zero();
  BigInt rest = index;
  for (auto& c : e) {
    c = big_mod(rest, characteristic());
    rest /= static_cast<unsigned long>(characteristic());
  }
  return e;
}

std::string ExtensionField::str(const Element& a) const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ']';
  return os.str();
}

int ExtensionField::element_degree(const Element& a) const {
  Element x = frobenius(a);
  int k = 1;
  while (x != a) {
    x = frobenius(x);
    ++k;
  }
  return k;
}

namespace {

// Column j of the result holds the coordinates of g^j, j = 0..count-1.
FpMatrix power_columns(const ExtensionField& field, const ExtensionField::Element& g,
                       int count) {
  const auto d = field.degree();
  FpMatrix m(d, count);
  auto pw = field.one();
  for (int j = 0; j < count; ++j) {
    for (int i = 0; i < d; ++i) m(i, j) = static_cast<std::int64_t>(pw[static_cast<std::size_t>(i)]);
    pw = field.mul(pw, g);
  }
  return m;
}

}  // namespace

FpPoly minimal_polynomial(const ExtensionField& field, const ExtensionField::Element& a) {
  const auto p = field.characteristic();
  const auto d = field.degree();
  auto cols = power_columns(field, a, d + 1);
  // The first k with g^k in span(1..g^{k-1}) gives the minimal polynomial.
  for (int k = 1; k <= d; ++k) {
    FpMatrix span = cols.leftCols(k);
    FpVector target = cols.col(k);
    auto sol = solve_mod(span, target, p);
    if (!sol) continue;
    std::vector<std::uint64_t> c(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < k; ++i)
      c[static_cast<std::size_t>(i)] = field.base().neg(static_cast<std::uint64_t>((*sol)(i)));
    c[static_cast<std::size_t>(k)] = 1;
    return FpPoly(field.base(), std::move(c));
  }
  throw VerificationError("no linear dependence among powers of a field element");
}

std::optional<std::vector<std::uint64_t>> coordinates_in_power_basis(
    const ExtensionField& field, const ExtensionField::Element& g,
    const ExtensionField::Element& target) {
  const auto p = field.characteristic();
  auto cols = power_columns(field, g, field.degree());
  FpVector rhs(field.degree());
  for (int i = 0; i < field.degree(); ++i)
    rhs(i) = static_cast<std::int64_t>(target[static_cast<std::size_t>(i)]);
  if (rank_mod(cols, p) < field.degree()) return std::nullopt;
  auto sol = solve_mod(cols, rhs, p);
  if (!sol) return std::nullopt;
  std::vector<std::uint64_t> out(static_cast<std::size_t>(field.degree()));
  for (int i = 0; i < field.degree(); ++i) out[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>((*sol)(i));
  return out;
}

}  // namespace k0forge
