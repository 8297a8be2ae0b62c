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

#include "k0forge/numtheory.hpp"

#include "k0forge/cyclotomic.hpp"
#include "k0forge/ext_field.hpp"
#include "k0forge/factor.hpp"
#include "k0forge/primes.hpp"

namespace k0forge::numtheory {

namespace {

void require_target(std::uint64_t p, std::uint64_t q, unsigned n) {
  require_prime(p, "p");
  require_prime(q, "q");
  if (n == 0) throw PreconditionError("n must be positive");
}

BigInt p_to_q_power(std::uint64_t p, std::uint64_t q, unsigned k) {
  const BigInt e = big_pow(from_u64(q), k);
  if (!e.fits_ulong_p()) throw PreconditionError("exponent q^n too large");
  return big_pow(from_u64(p), e.get_ui());
}

struct LevelOutcome {
  std::optional<EllCertificate> cert;
  bool exhausted = false;  // no prime of the right order exists at this level
  std::string note;
};

LevelOutcome search_level(const FieldTarget& t, unsigned n, const FindEllOptions& opt) {
  LevelOutcome out;
  const BigInt lower = p_to_q_power(t.p, t.q, n - 1) - 1;
  BigInt rest = cyclotomic_quotient(t.p, t.q, n);
  for (BigInt g = big_gcd(rest, lower); g > 1; g = big_gcd(rest, lower)) rest /= g;
  if (rest == 1) {
    out.exhausted = true;
    out.note = "every prime factor of the quotient at n = " + std::to_string(n) + " divides p^{q^{n-1}} - 1";
    return out;
  }
  BigInt ell;
  bool complete = false;
  if (is_probable_prime(rest)) {
    ell = rest;
    complete = true;
  } else {
    auto f = factor_integer(rest, opt.trial_bound, opt.rho_iterations);
    if (f.primes.empty()) {
      out.note = "inconclusive at this bound: no factor of a " + std::to_string(mpz_sizeinbase(rest.get_mpz_t(), 10)) +
                 "-digit cofactor found";
      return out;
    }
    ell = f.primes.begin()->first;
    complete = f.complete();
  }

  EllCertificate c;
  c.target = t;
  c.n_used = n;
  c.ell = ell;
  c.smallest = complete;
  const BigInt top = p_to_q_power(t.p, t.q, n) - 1;
  c.divides_top = mpz_divisible_p(top.get_mpz_t(), ell.get_mpz_t()) != 0;
  c.divides_lower = mpz_divisible_p(lower.get_mpz_t(), ell.get_mpz_t()) != 0;
  c.ord = multiplicative_order(from_u64(t.p) % ell, ell, {{from_u64(t.q), n}});
  if (ell < from_u64(opt.splitting_check_limit)) {
    const auto s = cyclo::splitting_data(t.p, static_cast<unsigned>(ell.get_ui()));
    c.splitting_agrees = BigInt(s.degree) == c.ord;
  }
  if (!c.valid()) throw VerificationError("certificate for l = " + to_string(ell) + " fails its own checks");
  out.cert = std::move(c);
  return out;
}

unsigned lte_quotient_valuation(std::uint64_t p, std::uint64_t q, unsigned n) {
  // v_q(p^{q^n} - 1) = v_q(p - 1) + n for odd q; for q = 2 and n >= 1 it is
  // v_2(p - 1) + v_2(p + 1) + n - 1.
  auto total = [&](unsigned k) -> unsigned {
    if (k == 0) return valuation(from_u64(p) - 1, q);
    if (q != 2) return valuation(from_u64(p) - 1, q) + k;
    return valuation(from_u64(p) - 1, 2) + valuation(from_u64(p) + 1, 2) + k - 1;
  };
  return total(n) - total(n - 1);
}

}  // namespace

BigInt cyclotomic_quotient(std::uint64_t p, std::uint64_t q, unsigned n) {
  require_target(p, q, n);
  return (p_to_q_power(p, q, n) - 1) / (p_to_q_power(p, q, n - 1) - 1);
}

GcdLemmaResult gcd_lemma_check(std::uint64_t p, std::uint64_t q, unsigned n) {
  require_target(p, q, n);
  const BigInt top = p_to_q_power(p, q, n) - 1;
  const BigInt lower = p_to_q_power(p, q, n - 1) - 1;
  if (top % lower != 0) throw VerificationError("p^{q^{n-1}} - 1 does not divide p^{q^n} - 1");
  GcdLemmaResult r;
  r.lhs = big_gcd(top / lower, lower);
  r.rhs = big_gcd(from_u64(q), lower);
  if (!r.holds())
    throw VerificationError("gcd identity fails at p = " + std::to_string(p) + ", q = " + std::to_string(q) +
                            ", n = " + std::to_string(n) + ": " + to_string(r.lhs) + " != " + to_string(r.rhs));
  return r;
}

bool EllCertificate::valid() const {
  return ell > 2 && ell != from_u64(target.p) && divides_top && !divides_lower &&
         ord == big_pow(from_u64(target.q), n_used) && n_used >= target.n && splitting_agrees.value_or(true);
}

EscalationResult valuation_escalation(std::uint64_t p, std::uint64_t q, unsigned start_n, const FindEllOptions& opt) {
  require_target(p, q, start_n);
  if ((p - 1) % q != 0) throw PreconditionError("valuation escalation needs q | p - 1");
  for (unsigned n = start_n; n <= start_n + opt.max_escalation; ++n) {
    EscalationResult r;
    r.n = n;
    r.quotient_valuation = valuation(cyclotomic_quotient(p, q, n), q);
    r.predicted_valuation = lte_quotient_valuation(p, q, n);
    if (r.quotient_valuation != r.predicted_valuation)
      throw VerificationError("q-adic valuation disagrees with lifting the exponent at n = " + std::to_string(n));
    if (r.quotient_valuation != 1) continue;
    r.certificate = search_level(FieldTarget{p, q, start_n}, n, opt).cert;
    return r;
  }
  throw VerificationError("valuation never reached 1 within the escalation limit");
}

FindEllResult find_ell(const FieldTarget& t, const FindEllOptions& opt) {
  require_target(t.p, t.q, t.n);
  FindEllResult res;
  unsigned n = t.n;
  if ((t.p - 1) % t.q == 0) {
    auto esc = valuation_escalation(t.p, t.q, t.n, opt);
    if (esc.n != t.n)
      res.note = "q | p - 1 and the q-adic valuation of the quotient is " +
                 std::to_string(lte_quotient_valuation(t.p, t.q, t.n)) + " at n = " + std::to_string(t.n) +
                 "; raised n to " + std::to_string(esc.n);
    n = esc.n;
  }
  for (; n <= t.n + opt.max_escalation; ++n) {
    auto lvl = search_level(t, n, opt);
    if (lvl.cert) {
      res.certificate = std::move(lvl.cert);
      return res;
    }
    if (!lvl.exhausted) {
      res.note = lvl.note;
      return res;
    }
    res.note += (res.note.empty() ? "" : "; ") + lvl.note;
  }
  res.note += "; escalation limit reached";
  return res;
}

ContainmentResult containment_check(const EllCertificate& cert, const FieldTarget& target) {
  ContainmentResult out;
  if (!cert.valid()) throw PreconditionError("invalid certificate");
  if (cert.target.p != target.p) throw PreconditionError("certificate and target have different p");
  const BigInt big_d = target.degree();
  if (cert.ord % big_d != 0) {
    out.reason = "target degree " + to_string(big_d) + " does not divide ord_l(p) = " + to_string(cert.ord);
    return out;
  }
  if (cert.ord > 4096) throw PreconditionError("residue degree too large for an explicit model");
  const int D = static_cast<int>(big_d.get_si());
  const int d = static_cast<int>(cert.ord.get_si());
  const PrimeField fp(target.p);

  const FpPoly g = lex_least_irreducible(fp, D);
  const ExtensionField K(D == d ? g : lex_least_irreducible(fp, d));
  const BigInt cofactor = (K.order() - 1) / cert.ell;
  ExtensionField::Element zeta = K.one();
  for (BigInt idx = 2; zeta == K.one(); ++idx) zeta = K.pow(K.from_index(idx), cofactor);
  const FpPoly h = minimal_polynomial(K, zeta);
  if (h.degree() != d) throw VerificationError("root of unity has the wrong degree");

  ContainmentWitness w;
  w.target_polynomial = g;
  w.residue_factor = h;
  const ExtensionField H(h);
  if (D == d) {
    // x in F_p[x]/(g) written as a polynomial r(zeta); then g(r(y)) = 0 mod h.
    auto coords = coordinates_in_power_basis(K, zeta, K.generator());
    if (!coords) throw VerificationError("zeta does not generate the residue field");
    w.root = FpPoly(fp, *coords);
  } else {
    std::vector<ExtensionField::Element> lifted;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(g.degree()); ++i) lifted.push_back(H.from_base(g.coeff(i)));
    auto rs = roots(Poly<ExtensionField>(H, lifted));
    if (rs.empty()) throw VerificationError("no root of the target polynomial in the residue field");
    w.root = H.to_poly(rs.front());
  }

  // Independent checks in F_p[y]/(h).
  if (!is_irreducible(h)) throw VerificationError("residue factor is reducible");
  const auto y = H.generator();
  if (H.pow(y, cert.ell) != H.one() || y == H.one()) throw VerificationError("y is not a primitive l-th root of unity");
  const auto r = H.from_poly(w.root);
  auto acc = H.zero();
  for (int i = g.degree(); i >= 0; --i) acc = H.add(H.mul(acc, r), H.from_base(g.coeff(static_cast<std::size_t>(i))));
  if (!H.is_zero(acc)) throw VerificationError("witness is not a root of the target polynomial");

  out.contained = true;
  out.reason = "F_{p^" + std::to_string(D) + "} embeds in F_p[y]/(h), deg h = " + std::to_string(d);
  out.witness = std::move(w);
  return out;
}

}  // namespace k0forge::numtheory
