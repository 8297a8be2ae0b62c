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

// Rings given by generators and relations over Z or over the K0 ring of a
// fusion ring, with bookkeeping for the cofibre-sequence witness of each
// relation and checks that maps out of the presented ring are well defined.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "k0forge/bigint.hpp"
#include "k0forge/cyclotomic.hpp"
#include "k0forge/fusion_ring.hpp"
#include "k0forge/intpoly.hpp"

namespace k0forge::presentation {

enum class Mode { associative, commutative };

/// An integer constant, a generator, or a basis label of the base ring.
struct Factor {
  std::variant<BigInt, std::string> value;
  static Factor constant(BigInt c) { return {std::move(c)}; }
  static Factor symbol(std::string s) { return {std::move(s)}; }
  bool is_constant() const { return std::holds_alternative<BigInt>(value); }
  const BigInt& as_constant() const { return std::get<BigInt>(value); }
  const std::string& as_symbol() const { return std::get<std::string>(value); }
  friend bool operator==(const Factor&, const Factor&) = default;
};

using Term = std::vector<Factor>;  // a product; empty means 1

/// A sum of products.
struct FormalExpression {
  std::vector<Term> terms;

  static FormalExpression constant(const BigInt& c);
  static FormalExpression symbol(const std::string& s);
  std::string str() const;

  friend FormalExpression operator+(const FormalExpression& a, const FormalExpression& b);
  friend FormalExpression operator-(const FormalExpression& a, const FormalExpression& b);
  friend FormalExpression operator*(const FormalExpression& a, const FormalExpression& b);
  friend bool operator==(const FormalExpression&, const FormalExpression&) = default;
};

/// Parses e.g. "2*x - 1", "t^3 + t^2 - 2*t - 1", "T2*T2 - T0". No parentheses.
FormalExpression parse_expression(const std::string& text);

/// sum c_i var^i, highest degree first.
FormalExpression from_polynomial(const IntPoly& f, const std::string& var);

/// Replaces each generator by an expression.
FormalExpression substitute(const FormalExpression& e, const std::map<std::string, FormalExpression>& images);

/// Z, or the K0 ring of a fusion ring (its basis labels act as constants).
struct BaseRing {
  std::optional<fusion::FusionRing> fusion;
  static BaseRing integers() { return {}; }
  static BaseRing k0(fusion::FusionRing f) { return {std::move(f)}; }
  bool is_integers() const { return !fusion.has_value(); }
  std::string name() const;
};

enum class WitnessState { allocated, derived, discharged };

/// Tokens for the two cofibre sequences Y -> O + Z -> J and Y -> Z -> J'
/// with J = J' attached to a relation O = 0, and the K0 derivation
/// ([O] + [Z] - [Y]) - ([Z] - [Y]) = [O].
struct HellerWitness {
  std::size_t relation_index = 0;
  std::string O, Y, Z, J, f, g, iso;
  WitnessState state = WitnessState::allocated;
  std::map<std::string, long> derived_class;  // filled by derive()

  /// Recomputes the cancellation; returns true iff exactly [O] survives.
  bool derive();
  bool check() const;
};

struct RingPresentation {
  BaseRing base;
  std::vector<std::string> generators;
  std::vector<FormalExpression> relations;
  Mode mode = Mode::commutative;
  std::vector<HellerWitness> witnesses;

  std::optional<std::size_t> generator_index(const std::string& s) const;
  bool all_witnesses(WitnessState s) const;
};

/// Validates symbols, canonicalizes terms in commutative mode and allocates
/// and derives one witness per relation.
RingPresentation present(BaseRing base, std::vector<std::string> generators,
                         std::vector<FormalExpression> relations, Mode mode);

/// Which complete normal-form algorithm applies, if any.
enum class Family { integers_mod, localization, monogenic, fusion_quotient, generic };
std::string family_name(Family f);
Family classify(const RingPresentation& p);

/// A ring map into (Z/m)[t]/(g) (g of degree 0 means Z/m) under which two
/// elements have different images.
struct SeparatingMap {
  BigInt modulus;
  IntPoly field_modulus;  // monic, or the constant 1
  std::vector<IntPoly> generator_images;
  std::string description;
};

enum class Verdict { equal, different, inconclusive };

struct EqualityResult {
  Verdict verdict = Verdict::inconclusive;
  Family family = Family::generic;
  unsigned depth = 0;  // rewriting passes used (generic family)
  std::optional<SeparatingMap> separating_map;
  std::string note;
};

struct EqualityOptions {
  unsigned depth = 10;
};

EqualityResult equal(const RingPresentation& p, const FormalExpression& a, const FormalExpression& b,
                     const EqualityOptions& options = {});

/// Normal form for the canonical families; nullopt for generic presentations.
std::optional<FormalExpression> normal_form(const RingPresentation& p, const FormalExpression& a);

/// Element of a presented ring.
struct PresentedRingElement {
  std::shared_ptr<const RingPresentation> presentation;
  FormalExpression expression;
};

EqualityResult equal(const PresentedRingElement& a, const PresentedRingElement& b, const EqualityOptions& options = {});

// ---- maps out of a presented ring ----

struct Target {
  enum class Kind { rationals, integers_mod, cyclotomic, fusion_k0, presented };
  Kind kind = Kind::rationals;
  BigInt modulus;      // integers_mod
  unsigned level = 0;  // cyclotomic
  std::shared_ptr<const fusion::FusionRing> fusion;
  std::shared_ptr<const RingPresentation> presentation;

  static Target rationals();
  static Target integers_mod(BigInt m);
  static Target cyclotomic(unsigned ell);
  static Target fusion_k0(fusion::FusionRing f);
  static Target presented(RingPresentation p);
  std::string name() const;
};

/// Rational, residue (as BigInt), cyclotomic element, fusion coordinates, or
/// an expression in the target presentation.
using TargetValue = std::variant<Rational, BigInt, cyclo::CyclotomicElement, std::vector<BigInt>, FormalExpression>;

std::string value_str(const TargetValue& v);

struct VersalMap {
  std::vector<std::optional<TargetValue>> generator_images;  // missing entries are solved for
  std::optional<std::vector<TargetValue>> base_images;       // checked against the structure constants
};

struct VersalCertificate {
  std::string target;
  std::vector<std::string> generator_images;
  std::vector<std::string> solved;  // generators whose image was solved from a relation
  std::vector<std::string> relation_images;
  std::vector<HellerWitness> witnesses;
  bool ok() const;
};

/// Checks that every relation maps to zero. Throws VerificationError naming
/// the first relation that does not, or that admits no solution for a
/// missing generator image.
VersalCertificate verify_versal_factorization(const RingPresentation& p, const Target& target, const VersalMap& map);

struct DualFixedResult {
  RingPresentation quotient;  // p modulo g - g* for every generator
  std::vector<FormalExpression> invariants;  // generators of the fixed image
  bool identity = false;
  bool involution = false;           // g** = g for every generator
  bool preserves_relations = false;  // every relation maps to 0
};

DualFixedResult dual_fixed_subring(const RingPresentation& p, const std::vector<FormalExpression>& involution,
                                   const EqualityOptions& options = {});

}  // namespace k0forge::presentation
