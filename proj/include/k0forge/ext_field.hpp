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

#include <memory>
#include <string>
#include <vector>

#include "k0forge/field.hpp"
#include "k0forge/poly.hpp"

namespace k0forge {

/// F_p[x]/(m) for a monic irreducible m. Elements are dense coefficient
/// vectors of length deg m in the basis 1, x, ..., x^{d-1}.
class ExtensionField {
 public:
  using Element = std::vector<std::uint64_t>;

  /// `modulus` must be monic irreducible; irreducibility is the caller's
  /// responsibility (see `is_irreducible`).
  explicit ExtensionField(FpPoly modulus);

  const PrimeField& base() const { return data_->base; }
  const FpPoly& modulus() const { return data_->modulus; }
  int degree() const { return data_->modulus.degree(); }
  std::uint64_t characteristic() const { return base().characteristic(); }
  BigInt order() const { return big_pow(characteristic(), static_cast<unsigned long>(degree())); }

  Element zero() const { return Element(static_cast<std::size_t>(degree()), 0); }
  Element one() const { return from_base(1); }
  Element generator() const;  // the class of x
  Element from_base(std::uint64_t c) const;
  Element from_int(std::int64_t v) const { return from_base(base().from_int(v)); }
  Element from_poly(const FpPoly& p) const;
  FpPoly to_poly(const Element& a) const { return FpPoly(base(), a); }

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element pow(const Element& a, const BigInt& e) const;
  Element frobenius(const Element& a) const { return pow(a, from_u64(characteristic())); }

  bool is_zero(const Element& a) const;
  /// Lexicographic from the top coefficient down (the element read as a
  /// base-p numeral).
  bool less(const Element& a, const Element& b) const;
  Element random(std::mt19937_64& rng) const;
  /// Element whose base-p digits are those of `index`.
  Element from_index(const BigInt& index) const;
  std::string str(const Element& a) const;

  /// Least k >= 1 with a^{p^k} = a: the degree of the subfield a generates.
  int element_degree(const Element& a) const;

  friend bool operator==(const ExtensionField& a, const ExtensionField& b) {
    return a.data_ == b.data_ || a.modulus() == b.modulus();
  }

 private:
  struct Data {
    PrimeField base;
    FpPoly modulus;
  };
  std::shared_ptr<const Data> data_;
};

/// Minimal polynomial over F_p of an element of an extension field.
FpPoly minimal_polynomial(const ExtensionField& field, const ExtensionField::Element& a);

/// Coordinates of `target` in the F_p-basis 1, g, ..., g^{d-1} of the
/// extension, or nullopt if the powers of g do not span.
std::optional<std::vector<std::uint64_t>> coordinates_in_power_basis(
    const ExtensionField& field, const ExtensionField::Element& g,
    const ExtensionField::Element& target);

}  // namespace k0forge
