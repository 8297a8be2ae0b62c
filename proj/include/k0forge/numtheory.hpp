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

// Primes l for which Z[zeta_l]/(p) contains F_{p^{q^n}}.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k0forge/bigint.hpp"
#include "k0forge/poly.hpp"

namespace k0forge::numtheory {

/// The field F_{p^{q^n}}.
struct FieldTarget {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  unsigned n = 1;
  BigInt degree() const { return big_pow(from_u64(q), n); }
};

/// (p^{q^n} - 1) / (p^{q^{n-1}} - 1).
BigInt cyclotomic_quotient(std::uint64_t p, std::uint64_t q, unsigned n);

struct GcdLemmaResult {
  BigInt lhs;  // gcd(quotient, p^{q^{n-1}} - 1)
  BigInt rhs;  // gcd(q, p^{q^{n-1}} - 1)
  bool holds() const { return lhs == rhs; }
};

/// Throws VerificationError if the two sides differ.
GcdLemmaResult gcd_lemma_check(std::uint64_t p, std::uint64_t q, unsigned n);

struct EllCertificate {
  FieldTarget target;
  unsigned n_used = 0;        // level the prime was found at (>= target.n)
  BigInt ell;
  BigInt ord;                 // ord_l(p) = q^{n_used}
  bool divides_top = false;   // l | p^{q^{n_used}} - 1
  bool divides_lower = true;  // l | p^{q^{n_used - 1}} - 1
  bool smallest = false;      // the quotient was fully factored
  std::optional<bool> splitting_agrees;  // cross-check with the cyclotomic module, small l only
  bool valid() const;
};

struct FindEllResult {
  std::optional<EllCertificate> certificate;
  std::string note;  // why the search was inconclusive, or how n escalated
  bool inconclusive() const { return !certificate.has_value(); }
};

struct FindEllOptions {
  std::uint64_t trial_bound = 100000;
  std::uint64_t rho_iterations = 200000;
  unsigned max_escalation = 8;
  std::uint64_t splitting_check_limit = 2000;  // run the splitting cross-check for l below this
};

/// Searches prime factors of the quotient not dividing p^{q^{n-1}} - 1. When
/// none exist the level n is raised (the q | p - 1 case is handled by
/// valuation_escalation); the level actually used is reported.
FindEllResult find_ell(const FieldTarget& target, const FindEllOptions& options = {});

struct EscalationResult {
  unsigned n = 0;
  unsigned quotient_valuation = 0;  // v_q of the quotient at level n
  unsigned predicted_valuation = 0; // from lifting the exponent
  std::optional<EllCertificate> certificate;
};

/// Least n >= start_n where v_q of the quotient is exactly 1; requires q | p - 1.
EscalationResult valuation_escalation(std::uint64_t p, std::uint64_t q, unsigned start_n,
                                      const FindEllOptions& options = {});

struct ContainmentWitness {
  FpPoly target_polynomial{PrimeField(2)};  // lex-least irreducible of degree q^n
  FpPoly residue_factor{PrimeField(2)};     // irreducible factor of Phi_l mod p
  FpPoly root{PrimeField(2)};               // root of target_polynomial in F_p[y]/(residue_factor)
};

struct ContainmentResult {
  bool contained = false;
  std::string reason;
  std::optional<ContainmentWitness> witness;
};

/// Throws VerificationError if the degrees say yes but no root is found.
ContainmentResult containment_check(const EllCertificate& cert, const FieldTarget& target);

}  // namespace k0forge::numtheory
