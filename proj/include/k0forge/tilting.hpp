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

// Semisimplified tilting modules for quantum sl2 at an l-th root of unity
// in characteristic p, at the level of fusion data.

#pragma once

#include <cstdint>
#include <vector>

#include "k0forge/cyclotomic.hpp"
#include "k0forge/ext_field.hpp"
#include "k0forge/fusion_ring.hpp"
#include "k0forge/intpoly.hpp"

namespace k0forge::fusion {

struct TiltingLabel {
  unsigned v = 0;
  std::uint64_t p = 0;
  unsigned ell = 0;
  bool survives() const { return v + 2 <= ell; }
};

/// F_{p^d}, d = ord_l(p), built on the lex-least irreducible of degree d,
/// with q the lex-least primitive l-th root of unity.
class VerlindeModel {
 public:
  VerlindeModel(std::uint64_t p, unsigned ell);

  std::uint64_t p() const { return p_; }
  unsigned ell() const { return ell_; }
  const ExtensionField& field() const { return field_; }
  const ExtensionField::Element& q() const { return powers_[1]; }
  /// q^k for any integer k.
  const ExtensionField::Element& q_power(long k) const;

  /// [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}; [0]_q = 0.
  ExtensionField::Element quantum_integer(unsigned n) const;
  ExtensionField::Element quantum_dimension(unsigned v) const { return quantum_integer(v + 1); }

 private:
  std::uint64_t p_;
  unsigned ell_;
  ExtensionField field_;
  std::vector<ExtensionField::Element> powers_;  // q^0 .. q^{l-1}
};

ExtensionField::Element quantum_dimension(const TiltingLabel& v);

/// N_{ij}^k of the truncated Clebsch-Gordan rule at level l.
std::int64_t truncated_clebsch_gordan(unsigned ell, unsigned i, unsigned j, unsigned k);

/// Basis T0..T(l-2), unit T0, all self-dual, dimension character from
/// VerlindeModel. Throws VerificationError naming the first failed axiom.
FusionRing build_semisimple_fusion(std::uint64_t p, unsigned ell);

/// Level of a ring produced by build_semisimple_fusion (labels T0..T(l-2)),
/// or by even_subring of one (labels T0, T2, ..., T(l-3)).
unsigned fusion_level(const FusionRing& f);

/// Span of T0, T2, ..., T(l-3).
FusionRing even_subring(const FusionRing& f);

struct K0IsomorphismCertificate {
  unsigned ell = 0;
  std::vector<std::string> labels;
  std::vector<cyclo::CyclotomicElement> images;  // [i+1]_zeta for T_i
  IntMatrix change_of_basis{0, 0};                 // column j: image j in the basis 1, c, ..., c^{h-1}
  BigInt determinant;
  bool homomorphism = false;
  bool independent = false;
  bool generates = false;
  /// Minimal polynomial of the image of the generator T2 (T0 when l = 3);
  /// the even ring is Z[x] modulo it.
  IntPoly generator_minimal_polynomial;
  bool ok() const { return homomorphism && independent && generates; }
};

/// T_i -> [i+1]_zeta into Z[zeta + zeta^{-1}]. Throws VerificationError if
/// any check fails.
K0IsomorphismCertificate k0_isomorphism_certificate(const FusionRing& even);

struct DimensionFieldReport {
  std::uint64_t p = 0;
  unsigned ell = 0;
  int model_degree = 0;  // ord_l(p)
  int degree = 0;        // dims lie in F_{p^degree}
  std::uint64_t n_star = 0;  // least n with l^2 | p^n - 1
};

DimensionFieldReport dimension_field(std::uint64_t p, unsigned ell);

}  // namespace k0forge::fusion
