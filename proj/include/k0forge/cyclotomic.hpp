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

// Exact arithmetic in Z[zeta_l] and its real subring Z[zeta_l + zeta_l^-1]
// for an odd prime l, and reduction modulo a prime p != l.

#pragma once

#include <cstdint>
#include <vector>

#include "k0forge/bigint.hpp"
#include "k0forge/ext_field.hpp"
#include "k0forge/intpoly.hpp"

namespace k0forge::cyclo {

/// Throws PreconditionError unless l is a prime > 2.
void require_level(unsigned level);

/// Element of Z[zeta_l] in the power basis 1, zeta, ..., zeta^{l-2}
/// (reduced modulo the l-th cyclotomic polynomial).
class CyclotomicElement {
 public:
  /// Accepts coefficients of any length; they are read as a polynomial in
  /// zeta and reduced.
  CyclotomicElement(unsigned level, std::vector<BigInt> coeffs);

  static CyclotomicElement zero(unsigned level);
  static CyclotomicElement from_int(unsigned level, const BigInt& n);
  static CyclotomicElement one(unsigned level) { return from_int(level, 1); }
  /// zeta^k, any integer k.
  static CyclotomicElement zeta_power(unsigned level, long k);
  /// zeta + zeta^{-1}.
  static CyclotomicElement real_generator(unsigned level);

  unsigned level() const { return level_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  /// zeta -> zeta^k for k prime to l.
  CyclotomicElement galois(long k) const;
  CyclotomicElement conjugate() const { return galois(-1); }
  bool is_real() const { return conjugate() == *this; }
  CyclotomicElement pow(unsigned e) const;

  CyclotomicElement operator-() const;
  friend CyclotomicElement operator+(const CyclotomicElement& a, const CyclotomicElement& b);
  friend CyclotomicElement operator-(const CyclotomicElement& a, const CyclotomicElement& b);
  friend CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b);
  friend CyclotomicElement operator*(const BigInt& s, const CyclotomicElement& a);
  friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) = default;

 private:
  CyclotomicElement(unsigned level, std::vector<BigInt> coeffs, bool trusted);
  static void check_same(const CyclotomicElement& a, const CyclotomicElement& b);

  unsigned level_;
  std::vector<BigInt> coeffs_;
};

/// Element of Z[c], c = zeta + zeta^{-1}, in the power basis of c:
/// coefficients of 1, c, ..., c^{(l-3)/2}.
class RealCyclotomicElement {
 public:
  RealCyclotomicElement(unsigned level, std::vector<BigInt> coeffs);

  unsigned level() const { return level_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  CyclotomicElement embed() const;

  /// Inverse of `embed`; throws PreconditionError for non-real input.
  static RealCyclotomicElement project(const CyclotomicElement& x);

  friend bool operator==(const RealCyclotomicElement&, const RealCyclotomicElement&) = default;

 private:
  unsigned level_;
  std::vector<BigInt> coeffs_;
};

/// Minimal polynomial over Z of zeta_l + zeta_l^{-1}: monic, degree (l-1)/2.
IntPoly real_minimal_polynomial(unsigned level);

/// Z[zeta_l]/(p) as a product of residue fields.
struct ResidueFieldSplitting {
  std::uint64_t p = 0;
  unsigned ell = 0;
  int degree = 0;              // multiplicative order of p mod l
  unsigned factor_count = 0;   // (l-1)/degree
  std::vector<FpPoly> irreducible_factors;  // sorted by poly_less
};

/// Factors Phi_l mod p as minimal polynomials of zeta^k, k running over
/// coset representatives of <p> in (Z/l)^*, inside an explicit model of
/// F_{p^d}. Verifies the product and irreducibility before returning.
ResidueFieldSplitting splitting_data(std::uint64_t p, unsigned ell);

/// The ring map Z[zeta_l] -> prod_i F_p[y]/(f_i).
class ResidueMap {
 public:
  explicit ResidueMap(ResidueFieldSplitting splitting);

  const ResidueFieldSplitting& splitting() const { return splitting_; }
  const std::vector<ExtensionField>& fields() const { return fields_; }

  using Image = std::vector<ExtensionField::Element>;
  Image operator()(const CyclotomicElement& x) const;
  Image add(const Image& a, const Image& b) const;
  Image mul(const Image& a, const Image& b) const;
  Image scale(const Image& a, std::uint64_t s) const;
  bool is_zero(const Image& a) const;

 private:
  ResidueFieldSplitting splitting_;
  std::vector<ExtensionField> fields_;
};

/// Image of x in Z[zeta_l]/(p); p = l (ramified) is rejected.
ResidueMap::Image reduce_mod_p(const CyclotomicElement& x, std::uint64_t p);

/// A primitive l-th root of unity in `field` (requires l | |field| - 1):
/// the lexicographically least one.
ExtensionField::Element least_primitive_root_of_unity(const ExtensionField& field, unsigned ell);

}  // namespace k0forge::cyclo
