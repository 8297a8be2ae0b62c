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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Each criterion checks library output against an independent
// recomputation where one exists.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "k0forge/cyclotomic.hpp"
#include "k0forge/filterprod.hpp"
#include "k0forge/modrep.hpp"
#include "k0forge/numtheory.hpp"
#include "k0forge/presentation.hpp"
#include "k0forge/primes.hpp"
#include "k0forge/serialize.hpp"
#include "k0forge/tilting.hpp"
#include "oracles.hpp"

using namespace k0forge;

namespace {

/// Collects failures; only the first few are printed.
struct Outcome {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) failures.push_back(what);
  }
};

const std::vector<unsigned> kLevels{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
const std::vector<std::uint64_t> kChars{2, 3, 5, 7, 11};

std::string pl(std::uint64_t p, unsigned ell) {
  return "p=" + std::to_string(p) + " ell=" + std::to_string(ell);
}

void verlinde_identification(Outcome& o) {
  for (unsigned ell : kLevels)
    for (auto p : kChars) {
      if (p == ell) continue;
      try {
        const auto c = fusion::k0_isomorphism_certificate(fusion::even_subring(fusion::build_semisimple_fusion(p, ell)));
        o.expect(c.homomorphism && c.independent && c.generates, "certificate flags " + pl(p, ell));
        o.expect(c.determinant == 1 || c.determinant == -1, "determinant " + pl(p, ell));
        // The reported minimal polynomial has degree (ell-1)/2 and kills the
        // generator's image, evaluated by Horner in Z[zeta].
        const auto& g = c.generator_minimal_polynomial;
        o.expect(g.degree() == static_cast<int>(ell - 1) / 2, "minpoly degree " + pl(p, ell));
        const auto& x = c.images[ell == 3 ? 0 : 1];
        auto acc = cyclo::CyclotomicElement::zero(ell);
        for (int i = g.degree(); i >= 0; --i) acc = acc * x + cyclo::CyclotomicElement::from_int(ell, g.coeff(static_cast<std::size_t>(i)));
        o.expect(acc.is_zero(), "minpoly root " + pl(p, ell));
      } catch (const std::exception& e) {
        o.expect(false, pl(p, ell) + ": " + e.what());
      }
    }
}

void simple_object_count(Outcome& o) {
  for (unsigned ell : kLevels)
    for (auto p : kChars) {
      if (p == ell) continue;
      const auto f = fusion::build_semisimple_fusion(p, ell);
      o.expect(f.rank() == ell - 1, "rank " + pl(p, ell));
      for (unsigned i = 0; i + 1 < ell && i < f.rank(); ++i)
        o.expect(f.labels()[i] == "T" + std::to_string(i), "label " + pl(p, ell));
      const fusion::VerlindeModel m(p, ell);
      o.expect(m.field().is_zero(m.quantum_dimension(ell - 1)), "dim T(ell-1) " + pl(p, ell));
      for (unsigned v = 0; v + 2 <= ell; ++v)
        o.expect(!m.field().is_zero(m.quantum_dimension(v)), "dim T(" + std::to_string(v) + ") " + pl(p, ell));
      o.expect(f.validate().ok(), "axioms " + pl(p, ell));
    }
}

void mod_p_cross_check(Outcome& o) {
  for (unsigned ell : {3u, 5u, 7u, 11u, 13u})
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u}) {
      if (p == ell) continue;
      const auto c = modrep::mod_p_cross_check(p, ell);
      o.expect(c.products_agree, "products " + pl(p, ell));
      o.expect(c.images_independent, "independence " + pl(p, ell));
      o.expect(c.residue_degrees_agree, "residue degrees " + pl(p, ell));
      o.expect(c.reduction.verified(), "reduction " + pl(p, ell));
    }
}

void jordan_tensor(Outcome& o) {
  for (std::uint64_t p : {3u, 5u, 7u}) {
    const int pi = static_cast<int>(p);
    for (int a = 1; a <= pi; ++a)
      for (int b = 1; b <= pi; ++b) {
        const auto tag = "p=" + std::to_string(p) + " J" + std::to_string(a) + "xJ" + std::to_string(b);
        const auto rule = modrep::tensor_blocks(p, a, b);
        o.expect(rule == oracle::tensor_by_matrix(p, a, b), "closed form vs matrix " + tag);
        const auto A = modrep::JordanModule::block(p, a), B = modrep::JordanModule::block(p, b);
        const auto T = modrep::tensor(A, B);
        o.expect(T.dimension() == a * b, "dimension " + tag);
        o.expect(modrep::stable_k0(T) == modrep::stable_k0(A) * modrep::stable_k0(B), "stable_k0 product " + tag);
        o.expect(modrep::stable_k0(A + B) == modrep::stable_k0(A) + modrep::stable_k0(B), "stable_k0 sum " + tag);
        o.expect(modrep::JordanModule::from_action(p, T.action()) == T, "from_action " + tag);
      }
  }
}

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

void trace_zero(Outcome& o) {
  std::mt19937_64 rng(20261018);
  std::size_t samples = 0;
  for (std::uint64_t p : {3u, 5u}) {
    std::vector<std::vector<int>> modules;
    std::vector<int> cur;
    for (int d = 1; d <= 6; ++d) partitions(d, static_cast<int>(p), cur, modules);
    const std::size_t per_module = 5000 / modules.size() + 1;
    for (const auto& blocks : modules) {
      const modrep::EndomorphismSpace space(modrep::JordanModule(p, blocks));
      for (std::size_t t = 0; t < per_module; ++t) {
        const auto f = space.random_stably_nilpotent(rng);
        ++samples;
        const bool stable = space.is_stably_nilpotent(f) && modrep::commutes_with_action(space.module(), f);
        o.expect(stable, "sampler produced a non-stably-nilpotent map, p=" + std::to_string(p));
        if (stable) o.expect(modrep::categorical_trace(space.module(), f) == 0, "nonzero trace, p=" + std::to_string(p));
      }
    }
  }
  o.expect(samples >= 10000, "only " + std::to_string(samples) + " samples");
}

bool has_exact_order(std::uint64_t p, const BigInt& ell, std::uint64_t q, unsigned n) {
  // ord_ell(p) = q^n iff p^{q^n} = 1 and p^{q^{n-1}} != 1 mod ell, q prime.
  BigInt e = big_pow(from_u64(q), n), r;
  mpz_powm(r.get_mpz_t(), from_u64(p).get_mpz_t(), e.get_mpz_t(), ell.get_mpz_t());
  if (r != 1) return false;
  e /= q;
  mpz_powm(r.get_mpz_t(), from_u64(p).get_mpz_t(), e.get_mpz_t(), ell.get_mpz_t());
  return r != 1;
}

void gcd_and_ell_search(Outcome& o) {
  const auto small = primes_up_to(13);
  for (auto p : small)
    for (auto q : small)
      for (unsigned n = 1; n <= 4; ++n) {
        const auto tag = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " n=" + std::to_string(n);
        try {
          const auto g = numtheory::gcd_lemma_check(p, q, n);
          // Independent recomputation of both sides with plain GMP.
          const BigInt lower = big_pow(from_u64(p), static_cast<unsigned long>(mpz_class(big_pow(from_u64(q), n - 1)).get_ui())) - 1;
          const BigInt top = big_pow(from_u64(p), static_cast<unsigned long>(mpz_class(big_pow(from_u64(q), n)).get_ui())) - 1;
          BigInt lhs, rhs;
          const BigInt quotient = top / lower;
          mpz_gcd(lhs.get_mpz_t(), quotient.get_mpz_t(), lower.get_mpz_t());
          mpz_gcd(rhs.get_mpz_t(), from_u64(q).get_mpz_t(), lower.get_mpz_t());
          o.expect(g.holds() && g.lhs == lhs && g.rhs == rhs && lhs == rhs, "gcd lemma " + tag);
        } catch (const std::exception& e) {
          o.expect(false, "gcd lemma " + tag + ": " + e.what());
        }
      }
  for (std::uint64_t p : {2u, 3u, 5u, 7u})
    for (std::uint64_t q : {2u, 3u, 5u, 7u})
      for (unsigned n = 1; n <= 2; ++n) {
        const auto tag = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " n=" + std::to_string(n);
        const numtheory::FieldTarget t{p, q, n};
        const auto r = numtheory::find_ell(t);
        if (!r.certificate) {
          o.expect(false, "find_ell inconclusive " + tag + ": " + r.note);
          continue;
        }
        const auto& c = *r.certificate;
        o.expect(c.valid(), "certificate " + tag);
        o.expect(is_probable_prime(c.ell), "ell prime " + tag);
        o.expect(has_exact_order(p, c.ell, q, c.n_used), "order recomputation " + tag);
        try {
          o.expect(numtheory::containment_check(c, t).contained, "containment " + tag);
        } catch (const std::exception& e) {
          o.expect(false, "containment " + tag + ": " + e.what());
        }
      }
}

std::vector<std::uint64_t> trial_division(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

void ax_density(Outcome& o) {
  const auto gauss = filterprod::root_density(IntPoly({1, 0, 1}), 10000);
  o.expect(gauss.sample_size == 10000, "x^2+1 sample size");
  o.expect(gauss.empirical >= 0.47 && gauss.empirical <= 0.53, "x^2+1 density " + std::to_string(gauss.empirical));
  // Euler's criterion on every sampled prime.
  std::size_t euler_hits = 0;
  for (const auto& [p, h] : gauss.rows) euler_hits += (p == 2 || pow_mod(p - 1, (p - 1) / 2, p) == 1);
  o.expect(euler_hits == gauss.hits, "x^2+1 hits vs Euler's criterion");

  const auto s3 = filterprod::root_density(IntPoly({-1, -1, 0, 1}), 10000);
  o.expect(s3.empirical >= 0.63 && s3.empirical <= 0.70, "x^3-x-1 density " + std::to_string(s3.empirical));
  o.expect(s3.galois_group && *s3.galois_group == "S3", "x^3-x-1 group");

  for (std::uint64_t n = 1; n <= 1000; ++n) {
    const auto c = filterprod::char_zero_certificate(from_u64(n), 200);
    o.expect(c.exact && c.verified && c.exceptions == trial_division(n), "char-zero n=" + std::to_string(n));
  }
}

void presentation_round_trips(Outcome& o) {
  using namespace presentation;
  auto E = parse_expression;
  auto decisive = [&](const EqualityResult& r, Verdict want, const std::string& tag) {
    o.expect(r.verdict != Verdict::inconclusive, "inconclusive " + tag);
    o.expect(r.verdict == want, "verdict " + tag);
  };
  auto witnesses_done = [&](const VersalCertificate& c, const std::string& tag) {
    o.expect(c.ok(), "versal certificate " + tag);
    for (const auto& w : c.witnesses) o.expect(w.state == WitnessState::discharged && w.check(), "witness " + tag);
  };
  auto json_round_trip = [&](const RingPresentation& p, const std::string& tag) {
    const auto q = io::decode_presentation(io::encode(p));
    o.expect(q.relations == p.relations && q.generators == p.generators, "json " + tag);
  };

  for (long n = 1; n <= 20; ++n) {
    const auto tag = "Z[1/" + std::to_string(n) + "]";
    const auto ns = std::to_string(n);
    try {
      const auto p = present(BaseRing::integers(), {"x"}, {E(ns + "*x - 1")}, Mode::commutative);
      json_round_trip(p, tag);
      decisive(equal(p, E(ns + "*x"), E("1")), Verdict::equal, tag + " n*x = 1");
      decisive(equal(p, E(std::to_string(n * n) + "*x^2"), E("1")), Verdict::equal, tag + " n^2*x^2 = 1");
      decisive(equal(p, E("x"), E("1")), n == 1 ? Verdict::equal : Verdict::different, tag + " x vs 1");
      decisive(equal(p, E("x + 1"), E("x")), Verdict::different, tag + " x + 1 vs x");
      const auto c = verify_versal_factorization(p, Target::rationals(), {});
      o.expect(c.generator_images.size() == 1 && c.generator_images[0] == "x -> " + value_str(TargetValue{Rational(1, n)}),
               "image of x " + tag);
      witnesses_done(c, tag);
    } catch (const std::exception& e) {
      o.expect(false, tag + ": " + e.what());
    }
  }

  for (unsigned ell : {3u, 5u, 7u, 11u, 13u}) {
    const auto tag = "Z[zeta_" + std::to_string(ell) + " + zeta^-1]";
    try {
      const auto m = cyclo::real_minimal_polynomial(ell);
      const auto P = present(BaseRing::integers(), {"c"}, {from_polynomial(m, "c")}, Mode::commutative);
      json_round_trip(P, tag);
      const int h = m.degree();
      // c^h against c^h - m(c), and c + 1 against c.
      decisive(equal(P, E("c^" + std::to_string(h)), from_polynomial(m, "c") * FormalExpression::constant(-1) +
                                                           E("c^" + std::to_string(h))),
               Verdict::equal, tag + " c^h");
      decisive(equal(P, E("c + 1"), E("c")), Verdict::different, tag + " c + 1 vs c");
      VersalMap forward;
      forward.generator_images = {TargetValue{cyclo::CyclotomicElement::real_generator(ell)}};
      witnesses_done(verify_versal_factorization(P, Target::cyclotomic(ell), forward), tag + " forward");

      // Back: K0 of the even ring onto P, T_i -> U_i(c) with U the Chebyshev
      // recursion for quantum integers.
      const auto even = fusion::even_subring(fusion::build_semisimple_fusion(ell == 3 ? 2 : 3, ell));
      std::vector<IntPoly> U{IntPoly({1}), IntPoly({0, 1})};
      for (unsigned k = 1; k + 1 <= ell - 2; ++k) U.push_back(IntPoly({0, 1}) * U[k] - U[k - 1]);
      VersalMap back;
      back.base_images.emplace();
      for (const auto& label : even.labels())
        back.base_images->push_back(TargetValue{from_polynomial(U[std::stoul(label.substr(1))], "c")});
      const auto K = present(BaseRing::k0(even), {}, {}, Mode::commutative);
      witnesses_done(verify_versal_factorization(K, Target::presented(P), back), tag + " back");
      // Every product in the even table holds among the images in P.
      for (std::size_t i = 0; i < even.rank(); ++i)
        for (std::size_t j = 0; j < even.rank(); ++j) {
          FormalExpression rhs;
          for (std::size_t k = 0; k < even.rank(); ++k)
            if (even.N(i, j, k))
              rhs = rhs + FormalExpression::constant(even.N(i, j, k)) *
                              from_polynomial(U[std::stoul(even.labels()[k].substr(1))], "c");
          const auto lhs = from_polynomial(U[std::stoul(even.labels()[i].substr(1))], "c") *
                           from_polynomial(U[std::stoul(even.labels()[j].substr(1))], "c");
          decisive(equal(P, lhs, rhs), Verdict::equal, tag + " product");
        }
    } catch (const std::exception& e) {
      o.expect(false, tag + ": " + e.what());
    }
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0: no limit stated
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Verlinde ring identification", 10, verlinde_identification},
      {2, "simple-object count", 0, simple_object_count},
      {3, "mod-p cross-check", 5, mod_p_cross_check},
      {4, "Jordan tensor oracle", 30, jordan_tensor},
      {5, "gcd lemma and find_ell", 60, gcd_and_ell_search},
      {6, "trace-zero evidence", 0, trace_zero},
      {7, "Ax density", 10, ax_density},
      {8, "presentation round trips", 0, presentation_round_trips},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("uncaught: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds)
      o.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    const bool pass = o.failures.empty();
    failed += !pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << o.checks << " checks, " << timing
              << ")\n";
    for (std::size_t i = 0; i < o.failures.size() && i < 5; ++i) std::cout << "    " << o.failures[i] << '\n';
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << '\n';
  return failed ? 1 : 0;
}
