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

#include <functional>

#include "doctest.h"
#include "k0forge/presentation.hpp"
#include "k0forge/tilting.hpp"

using namespace k0forge;
using namespace k0forge::presentation;

namespace {

FormalExpression E(const std::string& s) { return parse_expression(s); }

const long kModuli[] = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16, 17, 19, 21, 23, 25, 27};

long eval_mod(const FormalExpression& e, const std::map<std::string, long>& v, long m) {
  long acc = 0;
  for (const auto& t : e.terms) {
    long x = 1 % m;
    for (const auto& f : t) {
      long y;
      if (f.is_constant()) {
        BigInt r = f.as_constant() % m;
        y = r.get_si();
      } else {
        y = v.at(f.as_symbol());
      }
      x = ((x * y) % m + m) % m;
    }
    acc = (acc + x) % m;
  }
  return acc;
}

// Calls fn on every assignment gens -> Z/m under which all relations vanish.
void for_each_hom(const RingPresentation& p, long m, const std::function<void(const std::map<std::string, long>&)>& fn) {
  const std::size_t k = p.generators.size();
  std::vector<long> d(k, 0);
  while (true) {
    std::map<std::string, long> v;
    for (std::size_t i = 0; i < k; ++i) v[p.generators[i]] = d[i];
    bool ok = true;
    for (const auto& r : p.relations) ok = ok && eval_mod(r, v, m) == 0;
    if (ok) fn(v);
    std::size_t i = 0;
    while (i < k && ++d[i] == m) d[i++] = 0;
    if (i == k) break;
  }
}

IntPoly reduce_in(const IntPoly& x, const SeparatingMap& s) {
  IntPoly r = s.field_modulus.degree() >= 1 ? divmod_monic(x, s.field_modulus).second : x;
  return r.reduce_coeffs(s.modulus);
}

IntPoly eval_sep(const FormalExpression& e, const RingPresentation& p, const SeparatingMap& s) {
  IntPoly acc;
  for (const auto& t : e.terms) {
    IntPoly x({1});
    for (const auto& f : t) {
      if (f.is_constant())
        x = reduce_in(f.as_constant() * x, s);
      else
        x = reduce_in(x * s.generator_images.at(*p.generator_index(f.as_symbol())), s);
    }
    acc = reduce_in(acc + x, s);
  }
  return acc;
}

// Every verdict is checked against all homomorphisms into Z/m for the 20
// moduli above; a separating map is re-evaluated independently.
void check_sound(const RingPresentation& p, const FormalExpression& a, const FormalExpression& b) {
  auto r = equal(p, a, b);
  if (r.verdict == Verdict::equal) {
    for (long m : kModuli)
      for_each_hom(p, m, [&](const auto& v) { CHECK(eval_mod(a, v, m) == eval_mod(b, v, m)); });
  }
  if (r.verdict == Verdict::different && !p.base.fusion) {
    REQUIRE(r.separating_map);
    const auto& s = *r.separating_map;
    for (const auto& rel : p.relations) CHECK(eval_sep(rel, p, s).is_zero());
    CHECK(eval_sep(a, p, s) != eval_sep(b, p, s));
  }
}

}  // namespace

TEST_CASE("expressions parse and print") {
  CHECK(E("2*x - 1").str() == "2*x - 1");
  CHECK(E("t^3 + t^2 - 2*t - 1").str() == "t^3 + t^2 - 2*t - 1");
  CHECK(E("-x*y + 3").str() == "-x*y + 3");
  CHECK(E("0").str() == "0");
  CHECK_THROWS_AS(E("2*(x)"), PreconditionError);
  CHECK_THROWS_AS(E("x +"), PreconditionError);
  CHECK((E("x + 1") * E("x - 1")).terms.size() == 4);
  CHECK(substitute(E("u*v + u"), {{"u", E("v")}, {"v", E("u")}}).str() == "v*u + v");
}

TEST_CASE("presentation validation") {
  CHECK_THROWS_AS(present(BaseRing::integers(), {"x", "x"}, {}, Mode::commutative), PreconditionError);
  CHECK_THROWS_AS(present(BaseRing::integers(), {"x"}, {E("y - 1")}, Mode::commutative), PreconditionError);
  CHECK_THROWS_AS(present(BaseRing::integers(), {"2x"}, {}, Mode::commutative), PreconditionError);
  auto F = fusion::build_semisimple_fusion(2, 5);
  CHECK_THROWS_AS(present(BaseRing::k0(F), {"T1"}, {}, Mode::commutative), PreconditionError);
  auto p = present(BaseRing::integers(), {"y", "x"}, {E("3*y*x*2 - x*y")}, Mode::commutative);
  CHECK(p.relations[0].str() == "6*x*y - x*y");
  CHECK(p.all_witnesses(WitnessState::derived));
  for (const auto& w : p.witnesses) {
    CHECK(w.check());
    CHECK(w.derived_class.at(w.O) == 1);
  }
}

TEST_CASE("Z[1/2]") {
  auto p = present(BaseRing::integers(), {"x"}, {E("2*x - 1")}, Mode::commutative);
  CHECK(classify(p) == Family::localization);
  auto r = equal(p, E("4*x^2"), E("1"));
  CHECK(r.verdict == Verdict::equal);
  auto s = equal(p, E("x"), E("1"));
  REQUIRE(s.verdict == Verdict::different);
  CHECK(s.separating_map->modulus % 2 != 0);
  CHECK(normal_form(p, E("4*x^2"))->str() == "1");
  CHECK(normal_form(p, E("6*x^3"))->str() == "3*x^2");
  CHECK(normal_form(p, E("x^2 + x"))->str() == "3*x^2");
  check_sound(p, E("4*x^2"), E("1"));
  check_sound(p, E("x"), E("1"));
  check_sound(p, E("8*x^3 + x"), E("1 + x"));
}

TEST_CASE("Z[t]/(t^2 + t - 1)") {
  auto p = present(BaseRing::integers(), {"t"}, {E("t^2 + t - 1")}, Mode::commutative);
  CHECK(classify(p) == Family::monogenic);
  CHECK(equal(p, E("t^3"), E("2*t - 1")).verdict == Verdict::equal);
  CHECK(normal_form(p, E("t^3"))->str() == "2*t - 1");
  auto r = equal(p, E("t^3"), E("t"));
  CHECK(r.verdict == Verdict::different);
  check_sound(p, E("t^3"), E("2*t - 1"));
  check_sound(p, E("t^3"), E("t"));
  check_sound(p, E("t^5"), E("5*t - 3"));
  check_sound(p, E("t^4"), E("2 - 3*t"));

  auto q = present(BaseRing::integers(), {"t"}, {E("t^2 + 1"), E("3")}, Mode::commutative);
  CHECK(equal(q, E("t^4"), E("1")).verdict == Verdict::equal);
  CHECK(equal(q, E("t^2"), E("2")).verdict == Verdict::equal);
  check_sound(q, E("t"), E("2*t"));
  auto free = present(BaseRing::integers(), {"t"}, {}, Mode::commutative);
  check_sound(free, E("t^2"), E("t"));
}

TEST_CASE("quotients of Z") {
  auto p = present(BaseRing::integers(), {}, {E("12"), E("18")}, Mode::commutative);
  CHECK(classify(p) == Family::integers_mod);
  CHECK(equal(p, E("7"), E("1")).verdict == Verdict::equal);
  auto r = equal(p, E("2"), E("1"));
  REQUIRE(r.verdict == Verdict::different);
  CHECK(r.separating_map->modulus == 6);
  auto z = present(BaseRing::integers(), {}, {}, Mode::commutative);
  check_sound(z, E("2"), E("3"));
}

TEST_CASE("fusion base") {
  auto F = fusion::build_semisimple_fusion(2, 5);
  auto p = present(BaseRing::k0(F), {}, {}, Mode::commutative);
  CHECK(classify(p) == Family::fusion_quotient);
  CHECK(equal(p, E("T1*T1"), E("T0 + T2")).verdict == Verdict::equal);
  CHECK(equal(p, E("T1*T2"), E("T1 + T3")).verdict == Verdict::equal);
  CHECK(equal(p, E("T1"), E("T2")).verdict == Verdict::different);
  auto q = present(BaseRing::k0(F), {}, {E("T1 - T2")}, Mode::commutative);
  CHECK(equal(q, E("T1"), E("T2")).verdict == Verdict::equal);
  // T1 = T2 forces T0 + T2 = T1*T1 = T1*T2 = T1 + T3, so T3 = T0.
  CHECK(equal(q, E("T3"), E("T0")).verdict == Verdict::equal);
  CHECK(equal(q, E("T3"), E("T1")).verdict == Verdict::different);
}

TEST_CASE("generic rewriting") {
  auto p = present(BaseRing::integers(), {"x", "y"}, {E("x^2 - y"), E("y^2 - 2")}, Mode::commutative);
  CHECK(classify(p) == Family::generic);
  CHECK(equal(p, E("x^4"), E("2")).verdict == Verdict::equal);
  CHECK(equal(p, E("x^3*y"), E("2*x")).verdict == Verdict::equal);
  check_sound(p, E("x^4"), E("2"));
  check_sound(p, E("x"), E("y"));
  CHECK(equal(p, E("x"), E("y")).verdict == Verdict::different);

  auto weyl = present(BaseRing::integers(), {"x", "y"}, {E("y*x - x*y - 1")}, Mode::associative);
  CHECK(equal(weyl, E("y*x*x"), E("x*x*y + 2*x")).verdict == Verdict::equal);
  CHECK(equal(weyl, E("x*y"), E("y*x")).verdict != Verdict::equal);

  EqualityOptions shallow;
  shallow.depth = 1;
  auto deep = equal(weyl, E("y*y*y*x*x*x"), E("x*x*x*y*y*y + 9*x*x*y*y + 18*x*y + 6"));
  CHECK(deep.verdict == Verdict::equal);
  CHECK(equal(weyl, E("y*y*y*x*x*x"), E("x*x*x*y*y*y + 9*x*x*y*y + 18*x*y + 6"), shallow).verdict ==
        Verdict::inconclusive);
}

TEST_CASE("versal factorization") {
  auto p = present(BaseRing::integers(), {"x"}, {E("2*x - 1")}, Mode::commutative);
  auto q = verify_versal_factorization(p, Target::rationals(), {});
  CHECK(q.ok());
  CHECK(q.solved == std::vector<std::string>{"x"});
  CHECK(q.generator_images[0] == "x -> 1/2");
  CHECK(p.all_witnesses(WitnessState::derived));
  auto z9 = verify_versal_factorization(p, Target::integers_mod(9), {});
  CHECK(z9.generator_images[0] == "x -> 5");
  try {
    verify_versal_factorization(p, Target::cyclotomic(5), {});
    FAIL("expected an error");
  } catch (const VerificationError& e) {
    CHECK(std::string(e.what()).find("2 is not invertible") != std::string::npos);
  }
  CHECK_THROWS_AS(verify_versal_factorization(p, Target::rationals(), {{TargetValue{Rational(1, 3)}}}),
                  VerificationError);

  // Z[c]/(c^2 + c - 1) sends c to zeta + zeta^-1 in Z[zeta_5].
  auto r = present(BaseRing::integers(), {"c"}, {E("c^2 + c - 1")}, Mode::commutative);
  auto cert = verify_versal_factorization(r, Target::cyclotomic(5),
                                          {{TargetValue{cyclo::CyclotomicElement::real_generator(5)}}});
  CHECK(cert.ok());
  CHECK_THROWS_AS(verify_versal_factorization(r, Target::cyclotomic(7),
                                              {{TargetValue{cyclo::CyclotomicElement::real_generator(7)}}}),
                  VerificationError);

  // K0 of the semisimplified category at l = 5 maps to Z[zeta_5].
  auto F = fusion::build_semisimple_fusion(3, 5);
  auto k = present(BaseRing::k0(F), {}, {E("T1*T1 - T0 - T2")}, Mode::commutative);
  CHECK(verify_versal_factorization(k, Target::cyclotomic(5), {}).ok());
  CHECK(verify_versal_factorization(k, Target::fusion_k0(F), {}).ok());
  auto bad = present(BaseRing::k0(F), {}, {E("T1 - T2")}, Mode::commutative);
  CHECK_THROWS_AS(verify_versal_factorization(bad, Target::cyclotomic(5), {}), VerificationError);

  // Into another presentation: Z[1/2] -> Z[1/6].
  auto six = present(BaseRing::integers(), {"y"}, {E("6*y - 1")}, Mode::commutative);
  auto into = verify_versal_factorization(p, Target::presented(six), {{TargetValue{E("3*y")}}});
  CHECK(into.ok());
}

TEST_CASE("dual-fixed subring") {
  auto p = present(BaseRing::integers(), {"u", "v"}, {}, Mode::commutative);
  auto r = dual_fixed_subring(p, {E("v"), E("u")});
  CHECK(r.involution);
  CHECK(r.preserves_relations);
  CHECK_FALSE(r.identity);
  REQUIRE(r.invariants.size() == 2);
  CHECK(r.invariants[0].str() == "u + v");
  CHECK(r.invariants[1].str() == "u*v");
  CHECK(equal(r.quotient, E("u"), E("v")).verdict == Verdict::equal);

  auto c = present(BaseRing::integers(), {"c"}, {E("c^2 + c - 1")}, Mode::commutative);
  auto id = dual_fixed_subring(c, {E("c")});
  CHECK(id.identity);
  CHECK(id.involution);
  CHECK(id.quotient.relations == c.relations);

  auto z = present(BaseRing::integers(), {"z"}, {E("z^4 + z^3 + z^2 + z + 1")}, Mode::commutative);
  auto conj = dual_fixed_subring(z, {E("z^4")});
  CHECK(conj.involution);
  CHECK(conj.preserves_relations);
  CHECK_FALSE(conj.identity);
}

TEST_CASE("base images are checked against the structure constants") {
  // [k+1] as a polynomial in c = zeta + zeta^-1: U_0 = 1, U_1 = c, U_{k+1} = c U_k - U_{k-1}.
  const unsigned ell = 7;
  std::vector<IntPoly> U{IntPoly({1}), IntPoly({0, 1})};
  for (unsigned k = 1; k + 1 <= ell - 2; ++k) U.push_back(IntPoly({0, 1}) * U[k] - U[k - 1]);
  auto even = fusion::even_subring(fusion::build_semisimple_fusion(3, ell));
  auto src = present(BaseRing::k0(even), {}, {}, Mode::commutative);
  auto dst = present(BaseRing::integers(), {"c"}, {from_polynomial(cyclo::real_minimal_polynomial(ell), "c")},
                     Mode::commutative);
  std::vector<TargetValue> images;
  for (const auto& label : even.labels()) images.push_back(from_polynomial(U[std::stoul(label.substr(1))], "c"));
  VersalMap m;
  m.base_images = images;
  CHECK(verify_versal_factorization(src, Target::presented(dst), m).ok());
  std::swap((*m.base_images)[1], (*m.base_images)[2]);
  CHECK_THROWS_AS(verify_versal_factorization(src, Target::presented(dst), m), VerificationError);
}
