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

// Families p -> a_p in F_p modulo the cofinite filter on the primes, and
// root-density statistics across primes.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "k0forge/bigint.hpp"
#include "k0forge/intpoly.hpp"

namespace k0forge::filterprod {

/// A value at one prime: in F_p, or (formal) in F_p[s]/(g mod p) where g is
/// the family's adjoined polynomial and has no root mod p.
struct Residue {
  std::vector<std::uint64_t> coords;  // coefficients of 1, s, s^2, ...
  bool formal = false;
};

/// Picks one of the roots of g mod p (sorted ascending, nonempty).
using ChoiceOracle = std::function<std::uint64_t(std::uint64_t p, const std::vector<std::uint64_t>& roots)>;

/// Records the choices an oracle made, per prime.
struct ChoiceLog {
  std::map<std::uint64_t, std::uint64_t> choices;
};

ChoiceOracle smallest_root();

enum class Op { add, sub, mul };

class PrimeFamilyElement {
 public:
  using Rule = std::function<std::optional<std::uint64_t>(std::uint64_t p)>;

  static PrimeFamilyElement constant(const BigInt& n);
  /// n^{-1} in F_p; exceptions are the primes dividing n.
  static PrimeFamilyElement inverse(const BigInt& n);
  /// Closed-form rule; values are reduced mod p. nullopt means undefined.
  static PrimeFamilyElement from_rule(std::string name, Rule rule, std::set<std::uint64_t> exceptions = {});
  /// `base` with finitely many values replaced; those primes become exceptions.
  static PrimeFamilyElement tabulated(const PrimeFamilyElement& base, std::map<std::uint64_t, std::uint64_t> overrides);
  /// A root of g: chosen by the oracle where g has roots mod p, the formal
  /// root s where g is irreducible mod p, undefined otherwise.
  static PrimeFamilyElement root_of(const IntPoly& g, ChoiceOracle choose, std::shared_ptr<ChoiceLog> log = nullptr);

  std::optional<Residue> at(std::uint64_t p) const;
  const std::set<std::uint64_t>& exceptions() const;
  const std::optional<IntPoly>& adjoined() const;
  std::string str() const;

  friend PrimeFamilyElement operator+(const PrimeFamilyElement& a, const PrimeFamilyElement& b);
  friend PrimeFamilyElement operator-(const PrimeFamilyElement& a, const PrimeFamilyElement& b);
  friend PrimeFamilyElement operator*(const PrimeFamilyElement& a, const PrimeFamilyElement& b);

  struct Node;

 private:
  friend PrimeFamilyElement family_arithmetic(const PrimeFamilyElement&, const PrimeFamilyElement&, Op);
  explicit PrimeFamilyElement(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

PrimeFamilyElement family_arithmetic(const PrimeFamilyElement& a, const PrimeFamilyElement& b, Op op);

struct FilterEquality {
  bool equal = false;
  std::uint64_t bound = 0;  // primes up to this bound were compared
  std::size_t primes_checked = 0;
  std::vector<std::uint64_t> exceptions;     // declared exceptions up to the bound
  std::vector<std::uint64_t> disagreements;  // other primes where the values differ or are undefined
};

/// Equal iff every prime up to `bound` outside the declared exceptions agrees.
FilterEquality filter_equal(const PrimeFamilyElement& a, const PrimeFamilyElement& b, std::uint64_t bound = 2000);

struct CharZeroCertificate {
  BigInt n;
  std::vector<std::uint64_t> exceptions;  // prime divisors of n
  bool exact = false;      // n is +- a product of powers of the exceptions
  bool verified = false;   // n * n^{-1} = 1 off the exceptions, up to the bound
  std::uint64_t bound = 0;
};

CharZeroCertificate char_zero_certificate(const BigInt& n, std::uint64_t bound = 2000);

struct DensityReport {
  IntPoly polynomial;
  std::size_t sample_size = 0;  // number of primes, the first N
  std::uint64_t largest_prime = 0;
  std::size_t hits = 0;
  double empirical = 0;
  std::optional<double> predicted;
  std::optional<std::string> galois_group;
  std::vector<std::pair<std::uint64_t, bool>> rows;
};

/// Fraction of the first N primes modulo which f has a root. Roots are
/// detected by gcd(f, x^p - x); threads come from K0FORGE_THREADS.
DensityReport root_density(const IntPoly& f, std::size_t n_primes = 10000);

/// "prime,has_root" lines with a header.
std::string density_csv(const DensityReport& r);

struct ClosureOptions {
  std::uint64_t prime_bound = 2000;
  std::uint64_t char_zero_bound = 100;
};

struct ClosureReport {
  bool ok = false;
  std::size_t pairs_checked = 0;
  std::set<std::uint64_t> exceptions;      // union of declared exceptions
  std::set<std::uint64_t> formal_primes;   // primes where some value is formal
  std::uint64_t char_zero_bound = 0;
  std::vector<std::string> failures;
};

/// Requires a nonempty list containing an element filter-equal to 1.
ClosureReport filter_subring_closure(const std::vector<PrimeFamilyElement>& elements, const ClosureOptions& options = {});

}  // namespace k0forge::filterprod
