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

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k0forge/field.hpp"

namespace k0forge {

/// Dense univariate polynomial over a finite field, constant term first.
/// The coefficient vector never carries trailing zeros.
template <FiniteField Field>
class Poly {
 public:
  using Element = typename Field::Element;

  explicit Poly(Field f) : field_(std::move(f)), zero_(field_.zero()) {}
  Poly(Field f, std::vector<Element> coeffs)
      : field_(std::move(f)), coeffs_(std::move(coeffs)), zero_(field_.zero()) {
    trim();
  }

  static Poly constant(const Field& f, Element c) { return Poly(f, {std::move(c)}); }
  static Poly monomial(const Field& f, Element c, std::size_t degree) {
    std::vector<Element> v(degree + 1, f.zero());
    v[degree] = std::move(c);
    return Poly(f, std::move(v));
  }
  static Poly x(const Field& f) { return monomial(f, f.one(), 1); }

  const Field& field() const { return field_; }
  const std::vector<Element>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const Element& coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : zero_; }
  const Element& lead() const { return coeffs_.empty() ? zero_ : coeffs_.back(); }

  Element eval(const Element& at) const {
    Element r = field_.zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      r = field_.add(field_.mul(r, at), *it);
    return r;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    Element li = field_.inv(lead());
    return scaled(li);
  }

  Poly scaled(const Element& c) const {
    std::vector<Element> v;
    v.reserve(coeffs_.size());
    for (const auto& a : coeffs_) v.push_back(field_.mul(a, c));
    return Poly(field_, std::move(v));
  }

  Poly derivative() const {
    std::vector<Element> v;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      v.push_back(field_.mul(field_.from_int(static_cast<std::int64_t>(i % field_.characteristic())),
                             coeffs_[i]));
    return Poly(field_, std::move(v));
  }

  Poly operator-() const {
    std::vector<Element> v;
    v.reserve(coeffs_.size());
    for (const auto& a : coeffs_) v.push_back(field_.neg(a));
    return Poly(field_, std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const auto& f = a.field_;
    std::vector<Element> v(std::max(a.coeffs_.size(), b.coeffs_.size()), f.zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    const auto& f = a.field_;
    std::vector<Element> v(std::max(a.coeffs_.size(), b.coeffs_.size()), f.zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    const auto& f = a.field_;
    if (a.is_zero() || b.is_zero()) return Poly(f);
    std::vector<Element> v(a.coeffs_.size() + b.coeffs_.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (f.is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        v[i + j] = f.add(v[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    }
    return Poly(f, std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && field_.is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  Field field_;
  std::vector<Element> coeffs_;
  Element zero_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
template <FiniteField Field>
std::pair<Poly<Field>, Poly<Field>> divmod(const Poly<Field>& a, const Poly<Field>& b) {
  const auto& f = a.field();
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<Field>(f), a};
  auto r = a.coeffs();
  const auto& bc = b.coeffs();
  const auto li = f.inv(b.lead());
  const std::size_t db = bc.size() - 1;
  std::vector<typename Field::Element> q(r.size() - db, f.zero());
  for (std::size_t k = r.size(); k-- > db;) {
    if (f.is_zero(r[k])) continue;
    auto c = f.mul(r[k], li);
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = f.sub(r[k - db + j], f.mul(c, bc[j]));
  }
  r.resize(db);
  return {Poly<Field>(f, std::move(q)), Poly<Field>(f, std::move(r))};
}

template <FiniteField Field>
Poly<Field> operator%(const Poly<Field>& a, const Poly<Field>& b) {
  return divmod(a, b).second;
}

template <FiniteField Field>
Poly<Field> operator/(const Poly<Field>& a, const Poly<Field>& b) {
  return divmod(a, b).first;
}

/// Monic greatest common divisor (zero if both inputs are zero).
template <FiniteField Field>
Poly<Field> gcd(Poly<Field> a, Poly<Field> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
template <FiniteField Field>
std::tuple<Poly<Field>, Poly<Field>, Poly<Field>> ext_gcd(const Poly<Field>& a,
                                                          const Poly<Field>& b) {
  const auto& f = a.field();
  Poly<Field> r0 = a, r1 = b;
  Poly<Field> s0 = Poly<Field>::constant(f, f.one()), s1(f);
  Poly<Field> t0(f), t1 = Poly<Field>::constant(f, f.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  auto li = f.inv(r0.lead());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

template <FiniteField Field>
Poly<Field> mulmod(const Poly<Field>& a, const Poly<Field>& b, const Poly<Field>& m) {
  return (a * b) % m;
}

/// base^exp mod m by square-and-multiply.
template <FiniteField Field>
Poly<Field> powmod(Poly<Field> base, const BigInt& exp, const Poly<Field>& m) {
  const auto& f = base.field();
  Poly<Field> r = Poly<Field>::constant(f, f.one()) % m;
  base = base % m;
  const auto bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m);
    if (mpz_tstbit(exp.get_mpz_t(), i)) r = mulmod(r, base, m);
  }
  return r;
}

/// g(h) mod m, Horner style.
template <FiniteField Field>
Poly<Field> compose_mod(const Poly<Field>& g, const Poly<Field>& h, const Poly<Field>& m) {
  const auto& f = g.field();
  Poly<Field> r(f);
  for (auto it = g.coeffs().rbegin(); it != g.coeffs().rend(); ++it)
    r = (mulmod(r, h, m) + Poly<Field>::constant(f, *it)) % m;
  return r;
}

/// Total order used for deterministic output: by degree, then coefficients
/// from the top down.
template <FiniteField Field>
bool poly_less(const Poly<Field>& a, const Poly<Field>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& f = a.field();
  for (int i = a.degree(); i >= 0; --i) {
    const auto& x = a.coeff(static_cast<std::size_t>(i));
    const auto& y = b.coeff(static_cast<std::size_t>(i));
    if (f.less(x, y)) return true;
    if (f.less(y, x)) return false;
  }
  return false;
}

using FpPoly = Poly<PrimeField>;

/// Builds an F_p polynomial from integer coefficients, constant term first.
inline FpPoly fp_poly(const PrimeField& f, const std::vector<std::int64_t>& c) {
  std::vector<std::uint64_t> v;
  v.reserve(c.size());
  for (auto x : c) v.push_back(f.from_int(x));
  return FpPoly(f, std::move(v));
}

/// Descending terms, e.g. "y^2 + 18*y + 1"; coefficients as the field prints them.
template <FiniteField Field>
std::string poly_str(const Poly<Field>& f, const std::string& var = "x") {
  if (f.is_zero()) return "0";
  const auto& fld = f.field();
  std::string s;
  for (int k = f.degree(); k >= 0; --k) {
    const auto& c = f.coeff(static_cast<std::size_t>(k));
    if (fld.is_zero(c)) continue;
    if (!s.empty()) s += " + ";
    const bool unit = c == fld.one();
    if (k == 0 || !unit) s += fld.str(c);
    if (k > 0) s += (unit ? "" : "*") + var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s;
}

}  // namespace k0forge
