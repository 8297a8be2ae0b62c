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

#include "k0forge/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "k0forge/factor.hpp"
#include "k0forge/primes.hpp"

namespace k0forge::presentation {

// ---- formal expressions ----

FormalExpression FormalExpression::constant(const BigInt& c) {
  if (c == 0) return {};
  return {{Term{Factor::constant(c)}}};
}

FormalExpression FormalExpression::symbol(const std::string& s) { return {{Term{Factor::symbol(s)}}}; }

namespace {

BigInt term_coefficient(const Term& t) {
  BigInt c = 1;
  for (const auto& f : t)
    if (f.is_constant()) c *= f.as_constant();
  return c;
}

std::vector<std::string> term_symbols(const Term& t) {
  std::vector<std::string> s;
  for (const auto& f : t)
    if (!f.is_constant()) s.push_back(f.as_symbol());
  return s;
}

Term make_term(const BigInt& c, const std::vector<std::string>& symbols) {
  Term t;
  if (c != 1 || symbols.empty()) t.push_back(Factor::constant(c));
  for (const auto& s : symbols) t.push_back(Factor::symbol(s));
  return t;
}

}  // namespace

std::string FormalExpression::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms) {
    BigInt c = term_coefficient(t);
    const auto syms = term_symbols(t);
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      out << (neg ? "-" : "");
    else
      out << (neg ? " - " : " + ");
    first = false;
    bool need_star = false;
    if (c != 1 || syms.empty()) {
      out << c.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < syms.size();) {
      std::size_t j = i;
      while (j < syms.size() && syms[j] == syms[i]) ++j;
      out << (need_star ? "*" : "") << syms[i];
      if (j - i > 1) out << "^" << (j - i);
      need_star = true;
      i = j;
    }
  }
  if (first) return "0";
  return out.str();
}

FormalExpression operator+(const FormalExpression& a, const FormalExpression& b) {
  FormalExpression r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return r;
}

FormalExpression operator-(const FormalExpression& a, const FormalExpression& b) {
  FormalExpression r = a;
  for (const auto& t : b.terms) {
    Term n{Factor::constant(-1)};
    n.insert(n.end(), t.begin(), t.end());
    r.terms.push_back(std::move(n));
  }
  return r;
}

FormalExpression operator*(const FormalExpression& a, const FormalExpression& b) {
  FormalExpression r;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) {
      Term t = x;
      t.insert(t.end(), y.begin(), y.end());
      r.terms.push_back(std::move(t));
    }
  return r;
}

FormalExpression parse_expression(const std::string& text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw PreconditionError("cannot parse '" + text + "' at offset " + std::to_string(pos) + ": " + what);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> BigInt {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    return BigInt(text.substr(start, pos - start));
  };

  FormalExpression e;
  skip();
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  while (true) {
    Term t;
    if (negative) t.push_back(Factor::constant(-1));
    while (true) {
      skip();
      if (pos >= text.size()) fail("expected a factor");
      const char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        t.push_back(Factor::constant(number()));
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        const std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        const std::string name = text.substr(start, pos - start);
        skip();
        std::size_t power = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          const BigInt k = number();
          if (!k.fits_uint_p() || k > 10000) fail("exponent too large");
          power = k.get_ui();
        }
        if (power == 0) t.push_back(Factor::constant(1));
        for (std::size_t i = 0; i < power; ++i) t.push_back(Factor::symbol(name));
      } else {
        fail("unexpected character");
      }
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    e.terms.push_back(std::move(t));
    skip();
    if (pos >= text.size()) break;
    if (text[pos] != '+' && text[pos] != '-') fail("expected + or -");
    negative = text[pos] == '-';
    ++pos;
  }
  return e;
}

FormalExpression substitute(const FormalExpression& e, const std::map<std::string, FormalExpression>& images) {
  FormalExpression out;
  for (const auto& t : e.terms) {
    FormalExpression acc = FormalExpression::constant(1);
    for (const auto& f : t) {
      if (!f.is_constant()) {
        auto it = images.find(f.as_symbol());
        if (it != images.end()) {
          acc = acc * it->second;
          continue;
        }
      }
      acc = acc * FormalExpression{{Term{f}}};
    }
    out = out + acc;
  }
  return out;
}

std::string BaseRing::name() const {
  if (!fusion) return "Z";
  std::string s = "K0(";
  for (std::size_t i = 0; i < fusion->rank(); ++i) s += (i ? "," : "") + fusion->labels()[i];
  return s + ")";
}

// ---- witnesses ----

bool HellerWitness::derive() {
  // First sequence: [J] = [O] + [Z] - [Y]. Second: [J'] = [Z] - [Y], J = J'.
  std::map<std::string, long> first{{O, 1}, {Z, 1}, {Y, -1}};
  std::map<std::string, long> second{{Z, 1}, {Y, -1}};
  derived_class.clear();
  for (const auto& [k, v] : first) derived_class[k] += v;
  for (const auto& [k, v] : second) derived_class[k] -= v;
  std::erase_if(derived_class, [](const auto& kv) { return kv.second == 0; });
  const bool ok = check();
  if (ok && state == WitnessState::allocated) state = WitnessState::derived;
  return ok;
}

bool HellerWitness::check() const {
  return derived_class.size() == 1 && derived_class.begin()->first == O && derived_class.begin()->second == 1;
}

std::optional<std::size_t> RingPresentation::generator_index(const std::string& s) const {
  auto it = std::find(generators.begin(), generators.end(), s);
  if (it == generators.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators.begin());
}

bool RingPresentation::all_witnesses(WitnessState s) const {
  return std::all_of(witnesses.begin(), witnesses.end(), [&](const HellerWitness& w) { return w.state == s; });
}

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// ---- internal polynomials ----

struct Mono {
  std::size_t base = 0;
  std::vector<std::size_t> word;
};

// Degree-lexicographic on the word, then the base index.
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    if (a.word != b.word) return a.word < b.word;
    return a.base < b.base;
  }
};

using GPoly = std::map<Mono, BigInt, MonoLess>;

void add_to(GPoly& p, const Mono& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

GPoly sub(GPoly a, const GPoly& b) {
  for (const auto& [m, c] : b) add_to(a, m, -c);
  return a;
}

class Ctx {
 public:
  explicit Ctx(const RingPresentation& p) : p_(p) {
    for (std::size_t i = 0; i < p.generators.size(); ++i) gens_[p.generators[i]] = i;
    if (p.base.fusion)
      for (std::size_t i = 0; i < p.base.fusion->rank(); ++i) labels_[p.base.fusion->labels()[i]] = i;
  }

  const RingPresentation& p() const { return p_; }
  bool commutative() const { return p_.mode == Mode::commutative; }
  std::size_t rank() const { return p_.base.fusion ? p_.base.fusion->rank() : 1; }
  std::size_t unit() const { return p_.base.fusion ? p_.base.fusion->unit() : 0; }
  const std::map<std::string, std::size_t>& labels() const { return labels_; }

  GPoly one() const { return GPoly{{Mono{unit(), {}}, BigInt(1)}}; }

  GPoly mul(const GPoly& a, const GPoly& b) const {
    GPoly r;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        Mono m;
        m.word = ma.word;
        m.word.insert(m.word.end(), mb.word.begin(), mb.word.end());
        if (commutative()) std::sort(m.word.begin(), m.word.end());
        if (!p_.base.fusion) {
          add_to(r, m, ca * cb);
          continue;
        }
        for (std::size_t k = 0; k < rank(); ++k) {
          const auto n = p_.base.fusion->N(ma.base, mb.base, k);
          if (n == 0) continue;
          m.base = k;
          add_to(r, m, ca * cb * BigInt(static_cast<long>(n)));
        }
      }
    return r;
  }

  GPoly convert(const FormalExpression& e) const {
    GPoly out;
    for (const auto& t : e.terms) {
      GPoly acc = one();
      BigInt c = 1;
      for (const auto& f : t) {
        if (f.is_constant()) {
          c *= f.as_constant();
          continue;
        }
        const auto& s = f.as_symbol();
        if (auto g = gens_.find(s); g != gens_.end()) {
          GPoly next;
          for (const auto& [m0, v] : acc) {
            Mono m = m0;
            m.word.push_back(g->second);
            add_to(next, m, v);
          }
          acc = std::move(next);
        } else if (auto l = labels_.find(s); l != labels_.end()) {
          acc = mul(acc, GPoly{{Mono{l->second, {}}, BigInt(1)}});
        } else {
          throw PreconditionError("unknown symbol '" + s + "'");
        }
      }
      for (const auto& [m0, v] : acc) {
        Mono m = m0;
        if (commutative()) std::sort(m.word.begin(), m.word.end());
        add_to(out, m, c * v);
      }
    }
    return out;
  }

  FormalExpression to_expression(const GPoly& g) const {
    FormalExpression e;
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
      std::vector<std::string> syms;
      if (p_.base.fusion && it->first.base != unit()) syms.push_back(p_.base.fusion->labels()[it->first.base]);
      for (auto w : it->first.word) syms.push_back(p_.generators[w]);
      e.terms.push_back(make_term(it->second, syms));
    }
    return e;
  }

 private:
  const RingPresentation& p_;
  std::map<std::string, std::size_t> gens_;
  std::map<std::string, std::size_t> labels_;
};

bool is_constant_poly(const Ctx& ctx, const GPoly& g) {
  return std::all_of(g.begin(), g.end(), [&](const auto& kv) { return kv.first.word.empty() && kv.first.base == ctx.unit(); });
}

BigInt constant_value(const GPoly& g) { return g.empty() ? BigInt(0) : g.begin()->second; }

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Single-generator polynomial as an IntPoly in that generator.
IntPoly to_intpoly(const GPoly& g) {
  std::vector<BigInt> c;
  for (const auto& [m, v] : g) {
    if (c.size() <= m.word.size()) c.resize(m.word.size() + 1);
    c[m.word.size()] += v;
  }
  return IntPoly(c);
}

IntPoly from_fppoly(const FpPoly& f) {
  std::vector<BigInt> c;
  for (auto x : f.coeffs()) c.push_back(from_u64(x));
  return IntPoly(c);
}

// Row echelon form over Z; rows are kept with positive pivots and entries
// above each pivot reduced into [0, pivot).
struct Lattice {
  std::vector<std::vector<BigInt>> rows;
  std::vector<std::size_t> pivots;

  static Lattice build(std::vector<std::vector<BigInt>> gens, std::size_t dim) {
    Lattice L;
    std::size_t r = 0;
    for (std::size_t col = 0; col < dim && r < gens.size(); ++col) {
      while (true) {
        std::size_t best = gens.size();
        for (std::size_t i = r; i < gens.size(); ++i)
          if (gens[i][col] != 0 && (best == gens.size() || abs(gens[i][col]) < abs(gens[best][col]))) best = i;
        if (best == gens.size()) break;
        std::swap(gens[r], gens[best]);
        bool done = true;
        for (std::size_t i = r + 1; i < gens.size(); ++i) {
          if (gens[i][col] == 0) continue;
          BigInt q;
          mpz_fdiv_q(q.get_mpz_t(), gens[i][col].get_mpz_t(), gens[r][col].get_mpz_t());
          for (std::size_t k = 0; k < dim; ++k) gens[i][k] -= q * gens[r][k];
          if (gens[i][col] != 0) done = false;
        }
        if (done) break;
      }
      if (r < gens.size() && gens[r][col] != 0) {
        if (gens[r][col] < 0)
          for (auto& x : gens[r]) x = -x;
        L.pivots.push_back(col);
        ++r;
      }
    }
    gens.resize(r);
    L.rows = std::move(gens);
    for (std::size_t i = 0; i < L.rows.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) L.reduce_row(L.rows[j], i);
    return L;
  }

  void reduce_row(std::vector<BigInt>& v, std::size_t i) const {
    const auto col = pivots[i];
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v[col].get_mpz_t(), rows[i][col].get_mpz_t());
    if (q == 0) return;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= q * rows[i][k];
  }

  std::vector<BigInt> reduce(std::vector<BigInt> v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) reduce_row(v, i);
    return v;
  }
};

// Everything the complete normal forms need.
struct Analysis {
  Family family = Family::generic;
  BigInt modulus;                 // integers_mod, monogenic
  std::optional<IntPoly> f;       // monogenic, monic
  std::vector<BigInt> denominators;  // localization: x_i = -c_i / a_i
  std::vector<BigInt> signs;
  Lattice lattice;                // fusion_quotient
};

bool fusion_commutative(const fusion::FusionRing& f) {
  for (std::size_t i = 0; i < f.rank(); ++i)
    for (std::size_t j = 0; j < f.rank(); ++j)
      for (std::size_t k = 0; k < f.rank(); ++k)
        if (f.N(i, j, k) != f.N(j, i, k)) return false;
  return true;
}

std::vector<BigInt> coordinates(const Ctx& ctx, const GPoly& g) {
  std::vector<BigInt> v(ctx.rank());
  for (const auto& [m, c] : g) v[m.base] += c;
  return v;
}

Analysis analyze(const Ctx& ctx) {
  const auto& p = ctx.p();
  Analysis a;
  std::vector<GPoly> rels;
  for (const auto& r : p.relations) rels.push_back(ctx.convert(r));

  if (p.generators.empty()) {
    if (p.base.fusion && !fusion_commutative(*p.base.fusion)) return a;
    std::vector<std::vector<BigInt>> gens;
    for (const auto& r : rels)
      for (std::size_t j = 0; j < ctx.rank(); ++j)
        gens.push_back(coordinates(ctx, ctx.mul(r, GPoly{{Mono{j, {}}, BigInt(1)}})));
    a.lattice = Lattice::build(std::move(gens), ctx.rank());
    a.family = p.base.fusion ? Family::fusion_quotient : Family::integers_mod;
    a.modulus = a.lattice.rows.empty() ? BigInt(0) : a.lattice.rows[0][0];
    return a;
  }
  if (p.base.fusion) return a;

  // Localization: one relation a_i x_i + c_i with c_i = +-1 per generator.
  if (rels.size() == p.generators.size() && (ctx.commutative() || p.generators.size() == 1)) {
    std::vector<BigInt> den(p.generators.size()), sgn(p.generators.size());
    std::vector<bool> seen(p.generators.size(), false);
    bool ok = true;
    for (const auto& r : rels) {
      if (r.size() != 2) {
        ok = false;
        break;
      }
      const auto& [m0, c0] = *r.begin();
      const auto& [m1, c1] = *r.rbegin();
      if (!m0.word.empty() || m1.word.size() != 1 || (c0 != 1 && c0 != -1) || seen[m1.word[0]]) {
        ok = false;
        break;
      }
      seen[m1.word[0]] = true;
      den[m1.word[0]] = c1;
      sgn[m1.word[0]] = c0;
    }
    if (ok) {
      a.family = Family::localization;
      a.denominators = den;
      a.signs = sgn;
      return a;
    }
  }

  if (p.generators.size() == 1) {
    BigInt m = 0;
    std::vector<IntPoly> nonconst;
    for (const auto& r : rels) {
      if (is_constant_poly(ctx, r))
        m = big_gcd(m, constant_value(r));
      else
        nonconst.push_back(to_intpoly(r));
    }
    if (nonconst.size() > 1) return a;
    if (nonconst.size() == 1) {
      if (!nonconst[0].is_monic_up_to_sign()) return a;
      a.f = nonconst[0].lead() == 1 ? nonconst[0] : -nonconst[0];
    }
    a.family = Family::monogenic;
    a.modulus = m;
    return a;
  }
  return a;
}

Rational localization_value(const Ctx& ctx, const Analysis& a, const GPoly& g) {
  Rational total = 0;
  for (const auto& [m, c] : g) {
    Rational t = c;
    for (auto w : m.word) t *= Rational(-a.signs[w], a.denominators[w]);
    total += t;
  }
  total.canonicalize();
  (void)ctx;
  return total;
}

IntPoly monogenic_reduce(const Analysis& a, IntPoly f) {
  if (a.f) f = divmod_monic(f, *a.f).second;
  if (a.modulus != 0) f = f.reduce_coeffs(abs(a.modulus));
  return f;
}

}  // namespace

FormalExpression from_polynomial(const IntPoly& f, const std::string& var) {
  FormalExpression e;
  for (int i = f.degree(); i >= 0; --i) {
    const BigInt c = f.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    e.terms.push_back(make_term(c, std::vector<std::string>(static_cast<std::size_t>(i), var)));
  }
  return e;
}

namespace {

// ---- separating maps into (Z/m)[t]/(g) ----

struct ModRing {
  BigInt m;
  IntPoly g;  // monic; degree 0 means Z/m

  IntPoly reduce(IntPoly x) const {
    if (g.degree() >= 1) x = divmod_monic(x, g).second;
    return x.reduce_coeffs(m);
  }
};

IntPoly evaluate(const ModRing& R, const GPoly& p, const std::vector<IntPoly>& images) {
  IntPoly acc;
  for (const auto& [mono, c] : p) {
    IntPoly t = R.reduce(IntPoly({c}));
    for (auto w : mono.word) t = R.reduce(t * images[w]);
    acc = R.reduce(acc + t);
  }
  return acc;
}

bool separates(const Ctx& ctx, const SeparatingMap& s, const GPoly& diff) {
  if (ctx.p().base.fusion) return false;
  const ModRing R{s.modulus, s.field_modulus};
  for (const auto& r : ctx.p().relations)
    if (!evaluate(R, ctx.convert(r), s.generator_images).is_zero()) return false;
  return !evaluate(R, diff, s.generator_images).is_zero();
}

std::string ring_name(const BigInt& m, const IntPoly& g) {
  std::string s = "Z/" + m.get_str();
  if (g.degree() >= 1) s = "(" + s + ")[t]/(" + g.str("t") + ")";
  return s;
}

std::optional<SeparatingMap> localization_separation(const Ctx& ctx, const Analysis& a, const GPoly& diff) {
  const Rational d = localization_value(ctx, a, diff);
  for (auto q : first_primes(2000)) {
    const BigInt Q = from_u64(q);
    bool bad = mpz_divisible_p(d.get_num_mpz_t(), Q.get_mpz_t()) != 0;
    for (const auto& den : a.denominators) bad = bad || mpz_divisible_p(den.get_mpz_t(), Q.get_mpz_t()) != 0;
    if (bad) continue;
    SeparatingMap s{Q, IntPoly({1}), {}, ""};
    for (std::size_t i = 0; i < a.denominators.size(); ++i) {
      BigInt inv;
      mpz_invert(inv.get_mpz_t(), a.denominators[i].get_mpz_t(), Q.get_mpz_t());
      s.generator_images.push_back(IntPoly({mod_floor(-a.signs[i] * inv, Q)}));
    }
    s.description = "reduction to Z/" + Q.get_str();
    return s;
  }
  return std::nullopt;
}

std::optional<SeparatingMap> monogenic_separation(const Analysis& a, const IntPoly& r) {
  const IntPoly t({0, 1});
  auto try_prime = [&](std::uint64_t q) -> std::optional<SeparatingMap> {
    const PrimeField F(q);
    const BigInt Q = from_u64(q);
    const FpPoly rq = r.mod_p(F);
    if (rq.is_zero()) return std::nullopt;
    std::vector<FpPoly> candidates;
    if (a.f) {
      for (const auto& fac : factor(a.f->mod_p(F))) candidates.push_back(fac.factor);
    } else {
      candidates.push_back(lex_least_irreducible(F, std::max(1, rq.degree() + 1)));
    }
    for (const auto& h : candidates) {
      if ((rq % h).is_zero()) continue;
      const IntPoly g = from_fppoly(h);
      SeparatingMap s{Q, g, {t}, ""};
      s.description = (g.degree() == 1 ? "reduction to F_" + Q.get_str() : "reduction to F_" + Q.get_str() + "[t]/(" + g.str("t") + ")");
      if (g.degree() == 1) {
        // Land in Z/q with t sent to the root of the linear factor.
        s.field_modulus = IntPoly({1});
        s.generator_images = {IntPoly({mod_floor(-g.coeff(0), Q)})};
      }
      return s;
    }
    return std::nullopt;
  };

  if (a.modulus != 0) {
    const BigInt m = abs(a.modulus);
    if (m.fits_ulong_p() && m < (BigInt(1) << 31) && is_probable_prime(m))
      if (auto s = try_prime(m.get_ui())) return s;
    const IntPoly g = a.f ? *a.f : IntPoly::monomial(1, static_cast<std::size_t>(std::max(0, r.degree()) + 1));
    SeparatingMap s{m, g, {t}, ""};
    s.description = "identity into " + ring_name(m, g);
    return s;
  }
  for (auto q : first_primes(300))
    if (auto s = try_prime(q)) return s;
  return std::nullopt;
}

// Assignments of the generators to Z/m for small m.
std::optional<SeparatingMap> search_separation(const Ctx& ctx, const GPoly& diff) {
  if (ctx.p().base.fusion) return std::nullopt;
  const std::size_t k = ctx.p().generators.size();
  for (long m : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 11L, 13L, 16L, 17L, 19L, 23L, 25L, 27L, 29L, 31L}) {
    double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(m);
    if (total > 50000) continue;
    std::vector<long> digits(k, 0);
    while (true) {
      SeparatingMap s{BigInt(m), IntPoly({1}), {}, ""};
      for (auto d : digits) s.generator_images.push_back(IntPoly({d}));
      if (separates(ctx, s, diff)) {
        s.description = "assignment into Z/" + std::to_string(m);
        return s;
      }
      std::size_t i = 0;
      while (i < k && ++digits[i] == m) digits[i++] = 0;
      if (i == k) break;
    }
  }
  return std::nullopt;
}

// ---- bounded rewriting for the generic family ----

struct Rule {
  std::vector<std::size_t> lead;  // the leading word, coefficient 1
  GPoly poly;                     // normalized relation
};

std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> split_word(
    const std::vector<std::size_t>& w, const std::vector<std::size_t>& l, bool commutative) {
  if (l.size() > w.size()) return std::nullopt;
  if (commutative) {
    std::vector<std::size_t> rest;
    if (!std::includes(w.begin(), w.end(), l.begin(), l.end())) return std::nullopt;
    std::set_difference(w.begin(), w.end(), l.begin(), l.end(), std::back_inserter(rest));
    return std::pair{rest, std::vector<std::size_t>{}};
  }
  auto it = std::search(w.begin(), w.end(), l.begin(), l.end());
  if (it == w.end()) return std::nullopt;
  return std::pair{std::vector<std::size_t>(w.begin(), it), std::vector<std::size_t>(it + static_cast<long>(l.size()), w.end())};
}

GPoly reduce_coefficients(GPoly g, const BigInt& m) {
  if (m == 0) return g;
  GPoly out;
  for (const auto& [mono, c] : g) add_to(out, mono, mod_floor(c, m));
  return out;
}

}  // namespace

RingPresentation present(BaseRing base, std::vector<std::string> generators, std::vector<FormalExpression> relations,
                         Mode mode) {
  std::set<std::string> seen;
  for (const auto& g : generators) {
    if (!is_identifier(g)) throw PreconditionError("generator '" + g + "' is not an identifier");
    if (!seen.insert(g).second) throw PreconditionError("duplicate generator '" + g + "'");
    if (base.fusion && base.fusion->index_of(g)) throw PreconditionError("generator '" + g + "' clashes with a base label");
  }
  RingPresentation p;
  p.base = std::move(base);
  p.generators = std::move(generators);
  p.mode = mode;
  for (auto& r : relations) {
    FormalExpression canon;
    for (const auto& t : r.terms) {
      const BigInt c = term_coefficient(t);
      if (c == 0) continue;
      auto syms = term_symbols(t);
      for (const auto& s : syms)
        if (!seen.count(s) && !(p.base.fusion && p.base.fusion->index_of(s)))
          throw PreconditionError("unknown symbol '" + s + "' in relation " + r.str());
      if (mode == Mode::commutative) std::sort(syms.begin(), syms.end());
      canon.terms.push_back(make_term(c, syms));
    }
    p.relations.push_back(std::move(canon));
  }
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto n = std::to_string(i);
    HellerWitness w;
    w.relation_index = i;
    w.O = "O" + n;
    w.Y = "Y" + n;
    w.Z = "Z" + n;
    w.J = "J" + n;
    w.f = "f" + n;
    w.g = "g" + n;
    w.iso = "cof" + n;
    if (!w.derive()) throw VerificationError("witness derivation failed for relation " + n);
    p.witnesses.push_back(std::move(w));
  }
  return p;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::integers_mod: return "integers_mod";
    case Family::localization: return "localization";
    case Family::monogenic: return "monogenic";
    case Family::fusion_quotient: return "fusion_quotient";
    case Family::generic: return "generic";
  }
  return "generic";
}

Family classify(const RingPresentation& p) { return analyze(Ctx(p)).family; }

std::optional<FormalExpression> normal_form(const RingPresentation& p, const FormalExpression& e) {
  const Ctx ctx(p);
  const Analysis a = analyze(ctx);
  const GPoly g = ctx.convert(e);
  switch (a.family) {
    case Family::integers_mod:
    case Family::fusion_quotient: {
      const auto v = a.lattice.reduce(coordinates(ctx, g));
      GPoly out;
      for (std::size_t i = 0; i < v.size(); ++i) add_to(out, Mono{i, {}}, v[i]);
      return ctx.to_expression(out);
    }
    case Family::localization: {
      const Rational r = localization_value(ctx, a, g);
      BigInt big_a = 1, sign = 1;
      for (std::size_t i = 0; i < a.denominators.size(); ++i) {
        big_a *= abs(a.denominators[i]);
        sign *= -a.signs[i] * sgn(a.denominators[i]);
      }
      // r = n * (x_1 ... x_k)^e with e minimal.
      unsigned e = 0;
      BigInt pow = 1;
      while (mpz_divisible_p(pow.get_mpz_t(), r.get_den_mpz_t()) == 0) {
        pow *= big_a;
        ++e;
        if (e > 4096) throw VerificationError("denominator is not a product of inverted integers");
      }
      BigInt n = r.get_num() * (pow / r.get_den());
      if (e % 2 == 1) n *= sign;
      if (n == 0) return FormalExpression{};
      std::vector<std::string> syms;
      for (unsigned k = 0; k < e; ++k)
        for (const auto& s : p.generators) syms.push_back(s);
      if (p.mode == Mode::commutative) std::sort(syms.begin(), syms.end());
      return FormalExpression{{make_term(n, syms)}};
    }
    case Family::monogenic:
      return from_polynomial(monogenic_reduce(a, to_intpoly(g)), p.generators[0]);
    case Family::generic: return std::nullopt;
  }
  return std::nullopt;
}

EqualityResult equal(const RingPresentation& p, const FormalExpression& lhs, const FormalExpression& rhs,
                     const EqualityOptions& options) {
  const Ctx ctx(p);
  const Analysis a = analyze(ctx);
  const GPoly diff = sub(ctx.convert(lhs), ctx.convert(rhs));
  EqualityResult res;
  res.family = a.family;

  auto different = [&](std::optional<SeparatingMap> s, std::string note) {
    if (s && !p.base.fusion && !separates(ctx, *s, diff))
      throw VerificationError("separating map fails its own check: " + s->description);
    res.verdict = s ? Verdict::different : Verdict::inconclusive;
    res.separating_map = std::move(s);
    res.note = std::move(note);
    return res;
  };

  switch (a.family) {
    case Family::integers_mod:
    case Family::fusion_quotient: {
      const auto v = a.lattice.reduce(coordinates(ctx, diff));
      auto nz = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
      if (nz == v.end()) {
        res.verdict = Verdict::equal;
        return res;
      }
      const auto idx = static_cast<std::size_t>(nz - v.begin());
      SeparatingMap s;
      s.modulus = a.modulus;
      s.field_modulus = IntPoly({1});
      if (!p.base.fusion) {
        if (a.modulus == 0) {
          for (auto q : first_primes(2000))
            if (mpz_divisible_p(v[0].get_mpz_t(), from_u64(q).get_mpz_t()) == 0) {
              s.modulus = from_u64(q);
              break;
            }
        }
        s.description = "reduction to Z/" + s.modulus.get_str();
      } else {
        // Additive, not multiplicative: K0(F) modulo the relation lattice
        // carries no ring map to a field in general.
        s.description = "coordinate of " + p.base.fusion->labels()[idx] + " after lattice reduction";
      }
      return different(s, "normal forms differ");
    }
    case Family::localization: {
      if (localization_value(ctx, a, diff) == 0) {
        res.verdict = Verdict::equal;
        return res;
      }
      return different(localization_separation(ctx, a, diff), "rational values differ");
    }
    case Family::monogenic: {
      const IntPoly r = monogenic_reduce(a, to_intpoly(diff));
      if (r.is_zero()) {
        res.verdict = Verdict::equal;
        return res;
      }
      return different(monogenic_separation(a, r), "normal forms differ");
    }
    case Family::generic: break;
  }

  // Generic: rewrite with relations whose leading coefficient is a unit.
  BigInt m = 0;
  std::vector<Rule> rules;
  for (const auto& rel : p.relations) {
    GPoly g = ctx.convert(rel);
    if (g.empty()) continue;
    if (is_constant_poly(ctx, g)) {
      m = big_gcd(m, constant_value(g));
      continue;
    }
    const auto& [lead, c] = *g.rbegin();
    if (lead.base != ctx.unit() || (c != 1 && c != -1) || lead.word.empty()) continue;
    if (c == -1)
      for (auto& kv : g) kv.second = -kv.second;
    rules.push_back({lead.word, std::move(g)});
  }
  if (m == 1) {
    res.verdict = Verdict::equal;
    res.note = "the presented ring is zero";
    return res;
  }
  GPoly cur = reduce_coefficients(diff, m);
  for (unsigned pass = 1; pass <= options.depth && !cur.empty(); ++pass) {
    res.depth = pass;
    bool changed = false;
    std::vector<Mono> snapshot;
    for (auto it = cur.rbegin(); it != cur.rend(); ++it) snapshot.push_back(it->first);
    for (const auto& mono : snapshot) {
      auto it = cur.find(mono);
      if (it == cur.end()) continue;
      const BigInt c = it->second;
      for (const auto& rule : rules) {
        auto parts = split_word(mono.word, rule.lead, ctx.commutative());
        if (!parts) continue;
        GPoly left{{Mono{mono.base, parts->first}, c}};
        GPoly right{{Mono{ctx.unit(), parts->second}, BigInt(1)}};
        cur = sub(cur, ctx.mul(ctx.mul(left, rule.poly), right));
        changed = true;
        break;
      }
    }
    cur = reduce_coefficients(cur, m);
    if (!changed) break;
  }
  if (cur.empty()) {
    res.verdict = Verdict::equal;
    return res;
  }
  auto s = search_separation(ctx, diff);
  if (s) return different(s, "separated by a finite assignment");
  res.note = "inconclusive at depth " + std::to_string(options.depth) + ": residual " + ctx.to_expression(cur).str();
  return res;
}

EqualityResult equal(const PresentedRingElement& a, const PresentedRingElement& b, const EqualityOptions& options) {
  if (!a.presentation || a.presentation != b.presentation)
    throw PreconditionError("elements belong to different presentations");
  return equal(*a.presentation, a.expression, b.expression, options);
}

// ---- targets ----

Target Target::rationals() { return Target{}; }

Target Target::integers_mod(BigInt m) {
  if (m <= 0) throw PreconditionError("modulus must be positive");
  Target t;
  t.kind = Kind::integers_mod;
  t.modulus = std::move(m);
  return t;
}

Target Target::cyclotomic(unsigned ell) {
  cyclo::require_level(ell);
  Target t;
  t.kind = Kind::cyclotomic;
  t.level = ell;
  return t;
}

Target Target::fusion_k0(fusion::FusionRing f) {
  Target t;
  t.kind = Kind::fusion_k0;
  t.fusion = std::make_shared<const fusion::FusionRing>(std::move(f));
  return t;
}

Target Target::presented(RingPresentation p) {
  Target t;
  t.kind = Kind::presented;
  t.presentation = std::make_shared<const RingPresentation>(std::move(p));
  return t;
}

std::string Target::name() const {
  switch (kind) {
    case Kind::rationals: return "Q";
    case Kind::integers_mod: return "Z/" + modulus.get_str();
    case Kind::cyclotomic: return "Z[zeta_" + std::to_string(level) + "]";
    case Kind::fusion_k0: return BaseRing::k0(*fusion).name();
    case Kind::presented: {
      std::string s = presentation->base.name() + "[";
      for (std::size_t i = 0; i < presentation->generators.size(); ++i)
        s += (i ? "," : "") + presentation->generators[i];
      s += "]/(";
      for (std::size_t i = 0; i < presentation->relations.size(); ++i)
        s += (i ? ", " : "") + presentation->relations[i].str();
      return s + ")";
    }
  }
  return "?";
}

std::string value_str(const TargetValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, BigInt>) {
          return x.get_str();
        } else if constexpr (std::is_same_v<T, cyclo::CyclotomicElement>) {
          return IntPoly(x.coeffs()).str("z");
        } else if constexpr (std::is_same_v<T, std::vector<BigInt>>) {
          std::string s = "(";
          for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].get_str();
          return s + ")";
        } else {
          return x.str();
        }
      },
      v);
}

namespace {

class TargetOps {
 public:
  explicit TargetOps(const Target& t) : t_(t) {}

  TargetValue from_int(const BigInt& n) const {
    switch (t_.kind) {
      case Target::Kind::rationals: return Rational(n);
      case Target::Kind::integers_mod: return mod_floor(n, t_.modulus);
      case Target::Kind::cyclotomic: return cyclo::CyclotomicElement::from_int(t_.level, n);
      case Target::Kind::fusion_k0: {
        auto v = t_.fusion->basis_vector(t_.fusion->unit());
        for (auto& x : v) x *= n;
        return v;
      }
      case Target::Kind::presented: return FormalExpression::constant(n);
    }
    throw PreconditionError("bad target");
  }

  TargetValue add(const TargetValue& a, const TargetValue& b) const {
    check(a);
    check(b);
    switch (t_.kind) {
      case Target::Kind::rationals: return Rational(std::get<Rational>(a) + std::get<Rational>(b));
      case Target::Kind::integers_mod: return mod_floor(std::get<BigInt>(a) + std::get<BigInt>(b), t_.modulus);
      case Target::Kind::cyclotomic:
        return std::get<cyclo::CyclotomicElement>(a) + std::get<cyclo::CyclotomicElement>(b);
      case Target::Kind::fusion_k0: {
        auto v = std::get<std::vector<BigInt>>(a);
        const auto& w = std::get<std::vector<BigInt>>(b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
        return v;
      }
      case Target::Kind::presented: return std::get<FormalExpression>(a) + std::get<FormalExpression>(b);
    }
    throw PreconditionError("bad target");
  }

  TargetValue mul(const TargetValue& a, const TargetValue& b) const {
    check(a);
    check(b);
    switch (t_.kind) {
      case Target::Kind::rationals: return Rational(std::get<Rational>(a) * std::get<Rational>(b));
      case Target::Kind::integers_mod: return mod_floor(std::get<BigInt>(a) * std::get<BigInt>(b), t_.modulus);
      case Target::Kind::cyclotomic:
        return std::get<cyclo::CyclotomicElement>(a) * std::get<cyclo::CyclotomicElement>(b);
      case Target::Kind::fusion_k0:
        return t_.fusion->multiply(std::get<std::vector<BigInt>>(a), std::get<std::vector<BigInt>>(b));
      case Target::Kind::presented: return std::get<FormalExpression>(a) * std::get<FormalExpression>(b);
    }
    throw PreconditionError("bad target");
  }

  bool is_zero(const TargetValue& a) const {
    check(a);
    switch (t_.kind) {
      case Target::Kind::rationals: return std::get<Rational>(a) == 0;
      case Target::Kind::integers_mod: return std::get<BigInt>(a) == 0;
      case Target::Kind::cyclotomic: return std::get<cyclo::CyclotomicElement>(a).is_zero();
      case Target::Kind::fusion_k0: {
        const auto& v = std::get<std::vector<BigInt>>(a);
        return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
      }
      case Target::Kind::presented: {
        auto r = equal(*t_.presentation, std::get<FormalExpression>(a), FormalExpression{});
        if (r.verdict == Verdict::inconclusive)
          throw VerificationError("cannot decide whether " + value_str(a) + " vanishes in the target: " + r.note);
        return r.verdict == Verdict::equal;
      }
    }
    throw PreconditionError("bad target");
  }

  /// Some y with a*y + c = 0.
  std::optional<TargetValue> solve(const BigInt& a, const TargetValue& c) const {
    check(c);
    if (a == 0) return std::nullopt;
    auto divide_all = [&](std::vector<BigInt> v) -> std::optional<std::vector<BigInt>> {
      for (auto& x : v) {
        if (mpz_divisible_p(x.get_mpz_t(), a.get_mpz_t()) == 0) return std::nullopt;
        x = -x / a;
      }
      return v;
    };
    switch (t_.kind) {
      case Target::Kind::rationals: return Rational(-std::get<Rational>(c) / Rational(a));
      case Target::Kind::integers_mod: {
        const BigInt g = big_gcd(a, t_.modulus);
        const BigInt cc = std::get<BigInt>(c);
        if (mpz_divisible_p(cc.get_mpz_t(), g.get_mpz_t()) == 0) return std::nullopt;
        const BigInt m2 = t_.modulus / g;
        if (m2 == 1) return BigInt(0);
        BigInt inv;
        const BigInt a2 = mod_floor(a / g, m2);
        mpz_invert(inv.get_mpz_t(), a2.get_mpz_t(), m2.get_mpz_t());
        return mod_floor(-(cc / g) * inv, m2);
      }
      case Target::Kind::cyclotomic: {
        auto v = divide_all(std::get<cyclo::CyclotomicElement>(c).coeffs());
        if (!v) return std::nullopt;
        return cyclo::CyclotomicElement(t_.level, *v);
      }
      case Target::Kind::fusion_k0: {
        auto v = divide_all(std::get<std::vector<BigInt>>(c));
        if (!v) return std::nullopt;
        return *v;
      }
      case Target::Kind::presented:
        if (a != 1 && a != -1) return std::nullopt;
        return FormalExpression::constant(-a) * std::get<FormalExpression>(c);
    }
    return std::nullopt;
  }

  void check(const TargetValue& v) const {
    bool ok = false;
    switch (t_.kind) {
      case Target::Kind::rationals: ok = std::holds_alternative<Rational>(v); break;
      case Target::Kind::integers_mod: ok = std::holds_alternative<BigInt>(v); break;
      case Target::Kind::cyclotomic:
        ok = std::holds_alternative<cyclo::CyclotomicElement>(v) &&
             std::get<cyclo::CyclotomicElement>(v).level() == t_.level;
        break;
      case Target::Kind::fusion_k0:
        ok = std::holds_alternative<std::vector<BigInt>>(v) && std::get<std::vector<BigInt>>(v).size() == t_.fusion->rank();
        break;
      case Target::Kind::presented: ok = std::holds_alternative<FormalExpression>(v); break;
    }
    if (!ok) throw PreconditionError("value " + value_str(v) + " does not live in " + t_.name());
  }

 private:
  const Target& t_;
};

bool same_fusion(const fusion::FusionRing& a, const fusion::FusionRing& b) {
  return a.labels() == b.labels() && a.structure_constants() == b.structure_constants() && a.unit() == b.unit();
}

// T<i> -> [i+1] = sum_{j <= i} zeta^{i-2j}.
std::optional<cyclo::CyclotomicElement> verlinde_image(const std::string& label, unsigned ell) {
  if (label.size() < 2 || label[0] != 'T') return std::nullopt;
  if (!std::all_of(label.begin() + 1, label.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  const long i = std::stol(label.substr(1));
  if (i > static_cast<long>(ell) - 2) return std::nullopt;
  auto x = cyclo::CyclotomicElement::zero(ell);
  for (long j = 0; j <= i; ++j) x = x + cyclo::CyclotomicElement::zeta_power(ell, i - 2 * j);
  return x;
}

std::vector<TargetValue> default_base_images(const RingPresentation& p, const Target& t, const TargetOps& ops) {
  std::vector<TargetValue> out;
  if (!p.base.fusion) return out;
  const auto& F = *p.base.fusion;
  for (std::size_t i = 0; i < F.rank(); ++i) {
    const auto& label = F.labels()[i];
    if (i == F.unit()) {
      out.push_back(ops.from_int(1));
      continue;
    }
    if (t.kind == Target::Kind::fusion_k0 && same_fusion(F, *t.fusion)) {
      out.push_back(t.fusion->basis_vector(i));
    } else if (t.kind == Target::Kind::cyclotomic && verlinde_image(label, t.level)) {
      out.push_back(*verlinde_image(label, t.level));
    } else if (t.kind == Target::Kind::presented && t.presentation->base.fusion &&
               same_fusion(F, *t.presentation->base.fusion)) {
      out.push_back(FormalExpression::symbol(label));
    } else {
      throw PreconditionError("no default image for base label " + label + " in " + t.name() + "; pass base images");
    }
  }
  return out;
}

}  // namespace

bool VersalCertificate::ok() const {
  return witnesses.size() == relation_images.size() &&
         std::all_of(witnesses.begin(), witnesses.end(),
                     [](const HellerWitness& w) { return w.state == WitnessState::discharged && w.check(); });
}

VersalCertificate verify_versal_factorization(const RingPresentation& p, const Target& target, const VersalMap& map) {
  const TargetOps ops(target);
  if (!map.generator_images.empty() && map.generator_images.size() != p.generators.size())
    throw PreconditionError("expected one image slot per generator");
  std::vector<std::optional<TargetValue>> images = map.generator_images;
  images.resize(p.generators.size());
  for (const auto& v : images)
    if (v) ops.check(*v);
  std::vector<TargetValue> base = map.base_images ? *map.base_images : default_base_images(p, target, ops);
  if (p.base.fusion && base.size() != p.base.fusion->rank()) throw PreconditionError("expected one image per base label");
  for (const auto& v : base) ops.check(v);

  if (p.base.fusion && map.base_images) {
    // Supplied base images must form a ring map out of K0 of the base.
    const auto& F = *p.base.fusion;
    if (!ops.is_zero(ops.add(base[F.unit()], ops.from_int(-1))))
      throw VerificationError("base label " + F.labels()[F.unit()] + " must map to 1");
    for (std::size_t i = 0; i < F.rank(); ++i)
      for (std::size_t j = 0; j < F.rank(); ++j) {
        TargetValue rhs = ops.from_int(0);
        for (std::size_t k = 0; k < F.rank(); ++k)
          rhs = ops.add(rhs, ops.mul(ops.from_int(BigInt(static_cast<long>(F.N(i, j, k)))), base[k]));
        if (!ops.is_zero(ops.add(ops.mul(base[i], base[j]), ops.mul(ops.from_int(-1), rhs))))
          throw VerificationError("base images do not respect " + F.labels()[i] + "*" + F.labels()[j]);
      }
  }

  const Ctx ctx(p);
  std::vector<GPoly> rels;
  for (const auto& r : p.relations) rels.push_back(ctx.convert(r));

  auto base_value = [&](std::size_t b) { return p.base.fusion ? base[b] : ops.from_int(1); };
  auto eval = [&](const GPoly& g) {
    TargetValue acc = ops.from_int(0);
    for (const auto& [mono, c] : g) {
      TargetValue t = ops.mul(ops.from_int(c), base_value(mono.base));
      for (auto w : mono.word) t = ops.mul(t, *images[w]);
      acc = ops.add(acc, t);
    }
    return acc;
  };

  VersalCertificate cert;
  cert.target = target.name();

  // Solve missing images from relations of the form a*x + c.
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      if (images[i]) continue;
      for (std::size_t r = 0; r < rels.size(); ++r) {
        BigInt a = 0;
        GPoly rest;
        bool linear = true;
        for (const auto& [mono, c] : rels[r]) {
          if (mono.word.empty()) {
            add_to(rest, mono, c);
          } else if (mono.word.size() == 1 && mono.word[0] == i && mono.base == ctx.unit()) {
            a += c;
          } else {
            linear = false;
          }
        }
        if (!linear || a == 0) continue;
        auto y = ops.solve(a, eval(rest));
        if (!y)
          throw VerificationError("relation " + p.relations[r].str() + " = 0 has no solution for " + p.generators[i] +
                                  " in " + target.name() + ": " + a.get_str() + " is not invertible there");
        images[i] = std::move(y);
        cert.solved.push_back(p.generators[i]);
        progress = true;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (!images[i])
      throw VerificationError("no image given for " + p.generators[i] + " and no linear relation determines one");
    cert.generator_images.push_back(p.generators[i] + " -> " + value_str(*images[i]));
  }

  cert.witnesses = p.witnesses;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const TargetValue v = eval(rels[r]);
    cert.relation_images.push_back(value_str(v));
    if (!ops.is_zero(v))
      throw VerificationError("relation " + p.relations[r].str() + " maps to " + value_str(v) + ", not 0, in " +
                              target.name());
    auto& w = cert.witnesses[r];
    if (!w.check()) throw VerificationError("witness for relation " + std::to_string(r) + " was never derived");
    w.state = WitnessState::discharged;
  }
  return cert;
}

DualFixedResult dual_fixed_subring(const RingPresentation& p, const std::vector<FormalExpression>& involution,
                                   const EqualityOptions& options) {
  if (involution.size() != p.generators.size()) throw PreconditionError("expected one image per generator");
  std::map<std::string, FormalExpression> sub_map;
  for (std::size_t i = 0; i < p.generators.size(); ++i) sub_map[p.generators[i]] = involution[i];

  auto holds = [&](const FormalExpression& a, const FormalExpression& b) {
    return equal(p, a, b, options).verdict == Verdict::equal;
  };

  DualFixedResult out;
  out.involution = true;
  out.identity = true;
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    const auto g = FormalExpression::symbol(p.generators[i]);
    out.involution = out.involution && holds(substitute(involution[i], sub_map), g);
    out.identity = out.identity && holds(involution[i], g);
  }
  out.preserves_relations = true;
  for (const auto& r : p.relations) out.preserves_relations = out.preserves_relations && holds(substitute(r, sub_map), {});

  std::vector<FormalExpression> extra = p.relations;
  std::vector<bool> done(p.generators.size(), false);
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (done[i]) continue;
    done[i] = true;
    const auto g = FormalExpression::symbol(p.generators[i]);
    if (holds(involution[i], g)) {
      out.invariants.push_back(g);
      continue;
    }
    extra.push_back(g - involution[i]);
    // A swapped pair u <-> v contributes u + v and u*v once.
    std::optional<std::size_t> partner;
    if (involution[i].terms.size() == 1 && involution[i].terms[0].size() == 1 && !involution[i].terms[0][0].is_constant())
      partner = p.generator_index(involution[i].terms[0][0].as_symbol());
    if (partner && *partner != i && involution[*partner] == g) {
      done[*partner] = true;
      const auto h = FormalExpression::symbol(p.generators[*partner]);
      out.invariants.push_back(g + h);
      out.invariants.push_back(g * h);
    } else {
      out.invariants.push_back(g + involution[i]);
      out.invariants.push_back(g * involution[i]);
    }
  }
  out.quotient = out.identity ? p : present(p.base, p.generators, extra, p.mode);
  return out;
}

}  // namespace k0forge::presentation
