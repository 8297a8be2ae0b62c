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

#include "k0forge/tilting.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "k0forge/factor.hpp"
#include "k0forge/primes.hpp"

namespace k0forge::fusion {

namespace {

void require_pair(std::uint64_t p, unsigned ell) {
  require_prime(p, "p");
  cyclo::require_level(ell);
  if (p == ell) throw PreconditionError("p = l is not allowed (p = " + std::to_string(p) + ")");
}

ExtensionField model_field(std::uint64_t p, unsigned ell) {
  require_pair(p, ell);
  const auto d = static_cast<int>(multiplicative_order(p % ell, ell));
  return ExtensionField(lex_least_irreducible(PrimeField(p), d));
}

std::string label(unsigned i) { return "T" + std::to_string(i); }

unsigned parse_label(const std::string& s) {
  if (s.size() < 2 || s[0] != 'T' || !std::all_of(s.begin() + 1, s.end(), ::isdigit))
    throw PreconditionError("expected a tilting label T<n>, got '" + s + "'");
  return static_cast<unsigned>(std::stoul(s.substr(1)));
}

}  // namespace

VerlindeModel::VerlindeModel(std::uint64_t p, unsigned ell)
    : p_(p), ell_(ell), field_(model_field(p, ell)) {
  const auto q = cyclo::least_primitive_root_of_unity(field_, ell);
  powers_.push_back(field_.one());
  for (unsigned k = 1; k < ell; ++k) powers_.push_back(field_.mul(powers_.back(), q));
}

const ExtensionField::Element& VerlindeModel::q_power(long k) const {
  const long l = ell_;
  return powers_[static_cast<std::size_t>(((k % l) + l) % l)];
}

ExtensionField::Element VerlindeModel::quantum_integer(unsigned n) const {
  auto s = field_.zero();
  for (unsigned j = 0; j < n; ++j) s = field_.add(s, q_power(static_cast<long>(n) - 1 - 2 * static_cast<long>(j)));
  return s;
}

ExtensionField::Element quantum_dimension(const TiltingLabel& v) {
  return VerlindeModel(v.p, v.ell).quantum_dimension(v.v);
}

std::int64_t truncated_clebsch_gordan(unsigned ell, unsigned i, unsigned j, unsigned k) {
  const long top = std::min<long>(i + j, 2L * (ell - 2) - i - j);
  const long lo = std::labs(static_cast<long>(i) - static_cast<long>(j));
  const long kk = k;
  return (lo <= kk && kk <= top && (kk - i - j) % 2 == 0) ? 1 : 0;
}

FusionRing build_semisimple_fusion(std::uint64_t p, unsigned ell) {
  VerlindeModel model(p, ell);
  const unsigned r = ell - 1;
  std::vector<std::string> labels;
  std::vector<std::size_t> dual;
  DimensionCharacter dims{model.field(), {}};
  for (unsigned i = 0; i < r; ++i) {
    labels.push_back(label(i));
    dual.push_back(i);
    dims.values.push_back(model.quantum_dimension(i));
  }
  std::vector<std::int64_t> n(std::size_t{r} * r * r);
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = 0; j < r; ++j)
      for (unsigned k = 0; k < r; ++k) n[(std::size_t{i} * r + j) * r + k] = truncated_clebsch_gordan(ell, i, j, k);

  FusionRing f(std::move(labels), 0, std::move(n), std::move(dual), std::move(dims));
  const auto v = f.validate();
  const std::string where = " (p = " + std::to_string(p) + ", l = " + std::to_string(ell) + ")";
  if (!v.nonnegative) throw VerificationError("negative structure constant" + where);
  if (!v.unit_law) throw VerificationError("unit law fails" + where);
  if (!v.commutative) throw VerificationError("commutativity fails" + where);
  if (!v.associative) throw VerificationError("associativity fails" + where);
  if (!v.dual_involution) throw VerificationError("duality fails" + where);
  if (!v.dimension_homomorphism.value_or(false))
    throw VerificationError("dimension character is not a homomorphism" + where);
  return f;
}

unsigned fusion_level(const FusionRing& f) {
  // A full ring always contains T1; an even ring has only even labels.
  const bool even = std::all_of(f.labels().begin(), f.labels().end(),
                                [](const std::string& s) { return parse_label(s) % 2 == 0; });
  const auto r = static_cast<unsigned>(f.rank());
  return even ? 2 * r + 1 : r + 1;
}

FusionRing even_subring(const FusionRing& f) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < f.rank(); ++i)
    if (parse_label(f.labels()[i]) % 2 == 0) idx.push_back(i);
  return f.restrict_to(idx);
}

K0IsomorphismCertificate k0_isomorphism_certificate(const FusionRing& even) {
  using cyclo::CyclotomicElement;
  K0IsomorphismCertificate cert;
  const auto h = even.rank();
  const unsigned ell = static_cast<unsigned>(2 * h + 1);
  cyclo::require_level(ell);
  cert.ell = ell;
  cert.labels = even.labels();

  for (std::size_t a = 0; a < h; ++a) {
    const unsigned i = parse_label(even.labels()[a]);
    if (i % 2 || i + 3 > ell) throw PreconditionError("not an even tilting ring: label " + even.labels()[a]);
    std::vector<BigInt> c(ell);
    for (long j = 0; j <= static_cast<long>(i); ++j) {
      const long e = static_cast<long>(i) - 2 * j, l = ell;
      c[static_cast<std::size_t>(((e % l) + l) % l)] += 1;
    }
    cert.images.emplace_back(ell, c);
  }

  cert.homomorphism = true;
  for (std::size_t a = 0; a < h && cert.homomorphism; ++a) {
    for (std::size_t b = a; b < h && cert.homomorphism; ++b) {
      auto rhs = CyclotomicElement::zero(ell);
      for (std::size_t k = 0; k < h; ++k)
        if (even.N(a, b, k)) rhs = rhs + BigInt(even.N(a, b, k)) * cert.images[k];
      if (cert.images[a] * cert.images[b] != rhs) cert.homomorphism = false;
    }
  }
  if (cert.images[even.unit()] != CyclotomicElement::one(ell)) cert.homomorphism = false;

  cert.change_of_basis = IntMatrix(h, h);
  for (std::size_t a = 0; a < h; ++a) {
    const auto coords = cyclo::RealCyclotomicElement::project(cert.images[a]).coeffs();
    for (std::size_t r = 0; r < h; ++r) cert.change_of_basis(r, a) = coords[r];
  }
  cert.determinant = determinant(cert.change_of_basis);
  cert.independent = rank(cert.change_of_basis) == h;
  cert.generates = cert.determinant == 1 || cert.determinant == -1;

  // Minimal polynomial of y = image of T2 (or of the unit when h = 1):
  // solve y^h = sum_k a_k y^k in the c-basis.
  const std::size_t g = h > 1 ? 1 : 0;
  std::vector<CyclotomicElement> pw{CyclotomicElement::one(ell)};
  for (std::size_t k = 1; k <= h; ++k) pw.push_back(pw.back() * cert.images[g]);
  IntMatrix a(h, h);
  std::vector<BigInt> rhs(h);
  for (std::size_t k = 0; k <= h; ++k) {
    const auto coords = cyclo::RealCyclotomicElement::project(pw[k]).coeffs();
    for (std::size_t r = 0; r < h; ++r) (k < h ? a(r, k) : rhs[r]) = coords[r];
  }
  auto sol = solve_rational(a, rhs);
  if (sol) {
    std::vector<BigInt> mp(h + 1);
    mp[h] = 1;
    bool integral = true;
    for (std::size_t k = 0; k < h; ++k) {
      if ((*sol)[k].get_den() != 1) integral = false;
      mp[k] = -(*sol)[k].get_num();
    }
    if (integral) cert.generator_minimal_polynomial = IntPoly(mp);
  }

  const std::string where = " (l = " + std::to_string(ell) + ")";
  if (!cert.homomorphism) throw VerificationError("basis images do not respect the fusion rule" + where);
  if (!cert.independent) throw VerificationError("basis images are linearly dependent" + where);
  if (!cert.generates)
    throw VerificationError("change-of-basis determinant is " + to_string(cert.determinant) + where);
  return cert;
}

DimensionFieldReport dimension_field(std::uint64_t p, unsigned ell) {
  VerlindeModel model(p, ell);
  DimensionFieldReport rep;
  rep.p = p;
  rep.ell = ell;
  rep.model_degree = model.field().degree();
  int deg = 1;
  for (unsigned v = 0; v + 2 <= ell; ++v)
    deg = std::lcm(deg, model.field().element_degree(model.quantum_dimension(v)));
  rep.degree = deg;
  const std::uint64_t l2 = std::uint64_t{ell} * ell;
  rep.n_star = multiplicative_order(p % l2, l2);
  return rep;
}

}  // namespace k0forge::fusion
