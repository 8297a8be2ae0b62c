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

#include "k0forge/filterprod.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "k0forge/factor.hpp"
#include "k0forge/parallel.hpp"
#include "k0forge/primes.hpp"

namespace k0forge::filterprod {

struct PrimeFamilyElement::Node {
  enum class Kind { leaf, binary, tabulated } kind = Kind::leaf;
  std::string name;
  std::function<std::optional<Residue>(std::uint64_t)> eval;  // leaf
  Op op = Op::add;
  std::shared_ptr<const Node> lhs, rhs;  // binary; lhs is the base for tabulated
  std::map<std::uint64_t, std::uint64_t> overrides;
  std::set<std::uint64_t> exceptions;
  std::optional<IntPoly> adjoined;
};

namespace {

using Node = PrimeFamilyElement::Node;

std::vector<std::uint64_t> prime_divisors_of(const BigInt& n) {
  const auto f = factor_integer(abs(n), 1000000, 1000000);
  if (!f.complete()) throw PreconditionError("could not factor " + n.get_str());
  std::vector<std::uint64_t> out;
  for (const auto& [q, e] : f.primes) out.push_back(to_u64(q));
  return out;
}

FpPoly as_poly(const PrimeField& F, const Residue& r) { return FpPoly(F, r.coords); }

Residue combine(const Residue& a, const Residue& b, Op op, const std::optional<IntPoly>& adjoined, std::uint64_t p) {
  const PrimeField F(p);
  if (!a.formal && !b.formal) {
    const auto x = a.coords.empty() ? 0 : a.coords[0];
    const auto y = b.coords.empty() ? 0 : b.coords[0];
    switch (op) {
      case Op::add: return {{F.add(x, y)}, false};
      case Op::sub: return {{F.sub(x, y)}, false};
      case Op::mul: return {{F.mul(x, y)}, false};
    }
  }
  const FpPoly g = adjoined->mod_p(F);
  FpPoly r(F, {});
  switch (op) {
    case Op::add: r = as_poly(F, a) + as_poly(F, b); break;
    case Op::sub: r = as_poly(F, a) - as_poly(F, b); break;
    case Op::mul: r = (as_poly(F, a) * as_poly(F, b)) % g; break;
  }
  Residue out{r.coeffs(), true};
  out.coords.resize(static_cast<std::size_t>(g.degree()), 0);
  return out;
}

bool same_residue(Residue a, Residue b) {
  const std::size_t n = std::max(a.coords.size(), b.coords.size());
  a.coords.resize(n, 0);
  b.coords.resize(n, 0);
  return a.coords == b.coords;
}

std::optional<Residue> eval_node(const Node& n, std::uint64_t p) {
  if (n.kind == Node::Kind::tabulated)
    if (auto it = n.overrides.find(p); it != n.overrides.end()) return Residue{{it->second % p}, false};
  if (n.exceptions.count(p)) return std::nullopt;
  switch (n.kind) {
    case Node::Kind::leaf: return n.eval(p);
    case Node::Kind::tabulated: return eval_node(*n.lhs, p);
    case Node::Kind::binary: {
      auto a = eval_node(*n.lhs, p);
      auto b = eval_node(*n.rhs, p);
      if (!a || !b) return std::nullopt;
      return combine(*a, *b, n.op, n.adjoined, p);
    }
  }
  return std::nullopt;
}

std::string node_str(const Node& n) {
  switch (n.kind) {
    case Node::Kind::leaf: return n.name;
    case Node::Kind::tabulated: return node_str(*n.lhs) + "[" + std::to_string(n.overrides.size()) + " overrides]";
    case Node::Kind::binary: {
      const char* sym = n.op == Op::add ? " + " : n.op == Op::sub ? " - " : " * ";
      return "(" + node_str(*n.lhs) + sym + node_str(*n.rhs) + ")";
    }
  }
  return "?";
}

}  // namespace

ChoiceOracle smallest_root() {
  return [](std::uint64_t, const std::vector<std::uint64_t>& roots) { return roots.front(); };
}

PrimeFamilyElement PrimeFamilyElement::constant(const BigInt& n) {
  auto node = std::make_shared<Node>();
  node->name = n.get_str();
  node->eval = [n](std::uint64_t p) -> std::optional<Residue> { return Residue{{big_mod(n, p)}, false}; };
  return PrimeFamilyElement(node);
}

PrimeFamilyElement PrimeFamilyElement::inverse(const BigInt& n) {
  if (n == 0) throw PreconditionError("0 has no inverse at any prime");
  auto node = std::make_shared<Node>();
  node->name = "inv(" + n.get_str() + ")";
  for (auto q : prime_divisors_of(n)) node->exceptions.insert(q);
  node->eval = [n](std::uint64_t p) -> std::optional<Residue> {
    const auto r = big_mod(n, p);
    if (r == 0) return std::nullopt;
    return Residue{{inv_mod(r, p)}, false};
  };
  return PrimeFamilyElement(node);
}

PrimeFamilyElement PrimeFamilyElement::from_rule(std::string name, Rule rule, std::set<std::uint64_t> exceptions) {
  auto node = std::make_shared<Node>();
  node->name = std::move(name);
  node->exceptions = std::move(exceptions);
  node->eval = [rule = std::move(rule)](std::uint64_t p) -> std::optional<Residue> {
    auto v = rule(p);
    if (!v) return std::nullopt;
    return Residue{{*v % p}, false};
  };
  return PrimeFamilyElement(node);
}

PrimeFamilyElement PrimeFamilyElement::tabulated(const PrimeFamilyElement& base,
                                                 std::map<std::uint64_t, std::uint64_t> overrides) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::tabulated;
  node->lhs = base.node_;
  node->overrides = std::move(overrides);
  node->exceptions = base.node_->exceptions;
  for (const auto& [p, v] : node->overrides) node->exceptions.insert(p);
  node->adjoined = base.node_->adjoined;
  return PrimeFamilyElement(node);
}

PrimeFamilyElement PrimeFamilyElement::root_of(const IntPoly& g, ChoiceOracle choose, std::shared_ptr<ChoiceLog> log) {
  if (g.degree() < 1) throw PreconditionError("root_of needs a nonconstant polynomial");
  if (!choose) throw PreconditionError("root_of needs a choice oracle");
  auto node = std::make_shared<Node>();
  node->name = "root(" + g.str("s") + ")";
  node->adjoined = g;
  auto mutex = std::make_shared<std::mutex>();
  node->eval = [g, choose = std::move(choose), log, mutex](std::uint64_t p) -> std::optional<Residue> {
    const PrimeField F(p);
    const FpPoly gp = g.mod_p(F);
    if (gp.degree() != g.degree()) return std::nullopt;
    auto rs = roots(gp);
    if (!rs.empty()) {
      std::sort(rs.begin(), rs.end());
      const auto c = choose(p, rs);
      if (!std::binary_search(rs.begin(), rs.end(), c))
        throw PreconditionError("choice oracle returned a non-root at p = " + std::to_string(p));
      if (log) {
        std::lock_guard<std::mutex> lock(*mutex);
        log->choices[p] = c;
      }
      return Residue{{c}, false};
    }
    if (!is_irreducible(gp)) return std::nullopt;
    Residue s{std::vector<std::uint64_t>(static_cast<std::size_t>(gp.degree()), 0), true};
    s.coords[1] = 1;
    return s;
  };
  return PrimeFamilyElement(node);
}

std::optional<Residue> PrimeFamilyElement::at(std::uint64_t p) const {
  require_prime(p, "p");
  return eval_node(*node_, p);
}

const std::set<std::uint64_t>& PrimeFamilyElement::exceptions() const { return node_->exceptions; }
const std::optional<IntPoly>& PrimeFamilyElement::adjoined() const { return node_->adjoined; }
std::string PrimeFamilyElement::str() const { return node_str(*node_); }

PrimeFamilyElement family_arithmetic(const PrimeFamilyElement& a, const PrimeFamilyElement& b, Op op) {
  if (a.adjoined() && b.adjoined() && *a.adjoined() != *b.adjoined())
    throw PreconditionError("families adjoin different polynomials");
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::binary;
  node->op = op;
  node->lhs = a.node_;
  node->rhs = b.node_;
  node->exceptions = a.exceptions();
  node->exceptions.insert(b.exceptions().begin(), b.exceptions().end());
  node->adjoined = a.adjoined() ? a.adjoined() : b.adjoined();
  return PrimeFamilyElement(node);
}

PrimeFamilyElement operator+(const PrimeFamilyElement& a, const PrimeFamilyElement& b) {
  return family_arithmetic(a, b, Op::add);
}
PrimeFamilyElement operator-(const PrimeFamilyElement& a, const PrimeFamilyElement& b) {
  return family_arithmetic(a, b, Op::sub);
}
PrimeFamilyElement operator*(const PrimeFamilyElement& a, const PrimeFamilyElement& b) {
  return family_arithmetic(a, b, Op::mul);
}

FilterEquality filter_equal(const PrimeFamilyElement& a, const PrimeFamilyElement& b, std::uint64_t bound) {
  FilterEquality r;
  r.bound = bound;
  std::set<std::uint64_t> declared = a.exceptions();
  declared.insert(b.exceptions().begin(), b.exceptions().end());
  for (auto p : primes_up_to(bound)) {
    if (declared.count(p)) {
      r.exceptions.push_back(p);
      continue;
    }
    ++r.primes_checked;
    auto x = a.at(p);
    auto y = b.at(p);
    if (!x || !y || !same_residue(*x, *y)) r.disagreements.push_back(p);
  }
  r.equal = r.disagreements.empty();
  return r;
}

CharZeroCertificate char_zero_certificate(const BigInt& n, std::uint64_t bound) {
  if (n < 1) throw PreconditionError("n must be positive");
  CharZeroCertificate c;
  c.n = n;
  c.bound = bound;
  c.exceptions = prime_divisors_of(n);
  BigInt rest = n;
  for (auto q : c.exceptions)
    while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) rest /= from_u64(q);
  c.exact = rest == 1;
  const auto eq = filter_equal(PrimeFamilyElement::constant(n) * PrimeFamilyElement::inverse(n),
                               PrimeFamilyElement::constant(1), bound);
  std::vector<std::uint64_t> small;
  for (auto q : c.exceptions)
    if (q <= bound) small.push_back(q);
  bool zero_at_exceptions = true;
  for (auto q : c.exceptions) zero_at_exceptions = zero_at_exceptions && big_mod(n, q) == 0;
  c.verified = eq.equal && eq.exceptions == small && zero_at_exceptions;
  return c;
}

namespace {

bool has_root_mod(const IntPoly& f, std::uint64_t p) {
  const PrimeField F(p);
  const FpPoly fp = f.mod_p(F);
  if (fp.is_zero()) return true;
  if (fp.degree() == 0) return false;
  return has_root(fp);
}

std::vector<BigInt> divisors(BigInt n) {
  n = abs(n);
  std::vector<BigInt> d;
  for (BigInt i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      d.push_back(i);
      if (i * i != n) d.push_back(n / i);
    }
  return d;
}

// nullopt when the coefficients are too large to decide cheaply.
std::optional<bool> reducible_over_q(const IntPoly& f) {
  const int n = f.degree();
  if (n <= 1) return false;
  const BigInt a0 = f.coeff(0), an = f.lead();
  if (a0 == 0) return true;
  const BigInt limit(1000000000L);
  if (abs(a0) > limit || abs(an) > limit) return std::nullopt;
  const auto da = divisors(a0), dn = divisors(an);
  for (const auto& d : da)
    for (const auto& e : dn)
      for (int s : {1, -1}) {
        Rational x(BigInt(s) * d, e);
        x.canonicalize();
        if (f.eval(x) == 0) return true;
      }
  if (n <= 3) return false;
  if (n > 4 || an != 1) return std::nullopt;
  // Monic quartic: (x^2 + a x + b)(x^2 + d x + e) with b e = a0.
  const BigInt a3 = f.coeff(3), a2 = f.coeff(2), a1 = f.coeff(1);
  for (const auto& d0 : da)
    for (int s : {1, -1}) {
      const BigInt b = BigInt(s) * d0, e = a0 / b;
      std::vector<BigInt> as;
      if (e != b) {
        if ((a1 - b * a3) % (e - b) == 0) as.push_back((a1 - b * a3) / (e - b));
      } else {
        // a + d = a3, a d = a2 - 2b
        const BigInt disc = a3 * a3 - 4 * (a2 - 2 * b);
        if (disc >= 0) {
          BigInt r = sqrt(disc);
          if (r * r == disc && (a3 + r) % 2 == 0) as.push_back((a3 + r) / 2);
        }
      }
      for (const auto& a : as) {
        const IntPoly g({b, a, BigInt(1)}), h({e, a3 - a, BigInt(1)});
        if (g * h == f) return true;
      }
    }
  return false;
}

struct GroupData {
  const char* name;
  int degree;
  int order;
  std::vector<std::vector<int>> cycle_types;
  double fixed_point_share;
};

const std::vector<GroupData>& transitive_groups() {
  static const std::vector<GroupData> g{
      {"C2", 2, 2, {{1, 1}, {2}}, 0.5},
      {"A3", 3, 3, {{1, 1, 1}, {3}}, 1.0 / 3},
      {"S3", 3, 6, {{1, 1, 1}, {1, 2}, {3}}, 2.0 / 3},
      {"V4", 4, 4, {{1, 1, 1, 1}, {2, 2}}, 0.25},
      {"C4", 4, 4, {{1, 1, 1, 1}, {2, 2}, {4}}, 0.25},
      {"D4", 4, 8, {{1, 1, 1, 1}, {2, 2}, {4}, {1, 1, 2}}, 3.0 / 8},
      {"A4", 4, 12, {{1, 1, 1, 1}, {2, 2}, {1, 3}}, 0.75},
      {"S4", 4, 24, {{1, 1, 1, 1}, {2, 2}, {4}, {1, 1, 2}, {1, 3}}, 5.0 / 8},
  };
  return g;
}

}  // namespace

DensityReport root_density(const IntPoly& f, std::size_t n_primes) {
  if (f.degree() < 1) throw PreconditionError("root_density needs a nonconstant polynomial");
  if (n_primes < 100) throw PreconditionError("sample at least 100 primes");
  DensityReport r;
  r.polynomial = f;
  r.sample_size = n_primes;
  const auto primes = first_primes(n_primes);
  r.largest_prime = primes.back();
  std::vector<char> hit(primes.size());
  std::vector<std::vector<int>> pattern(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) {
    const auto p = primes[i];
    hit[i] = has_root_mod(f, p);
    const PrimeField F(p);
    const FpPoly fp = f.mod_p(F);
    if (f.degree() <= 4 && fp.degree() == f.degree() && gcd(fp, fp.derivative()).degree() == 0)
      pattern[i] = factorization_pattern(fp);
  });
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    r.rows.emplace_back(primes[i], hit[i] != 0);
    r.hits += hit[i] ? 1 : 0;
    if (!pattern[i].empty()) seen.insert(pattern[i]);
  }
  r.empirical = static_cast<double>(r.hits) / static_cast<double>(r.sample_size);

  if (f.degree() == 1) {
    r.predicted = 1.0;
    r.galois_group = "trivial";
  } else if (f.degree() <= 4 && reducible_over_q(f) == std::optional<bool>(false)) {
    const GroupData* best = nullptr;
    for (const auto& g : transitive_groups()) {
      if (g.degree != f.degree()) continue;
      std::set<std::vector<int>> types(g.cycle_types.begin(), g.cycle_types.end());
      if (!std::includes(types.begin(), types.end(), seen.begin(), seen.end())) continue;
      if (!best || g.order < best->order) best = &g;
    }
    if (best) {
      r.predicted = best->fixed_point_share;
      r.galois_group = best->name;
    }
  }
  return r;
}

std::string density_csv(const DensityReport& r) {
  std::ostringstream out;
  out << "prime,has_root\n";
  for (const auto& [p, h] : r.rows) out << p << "," << (h ? 1 : 0) << "\n";
  return out.str();
}

ClosureReport filter_subring_closure(const std::vector<PrimeFamilyElement>& elements, const ClosureOptions& options) {
  if (elements.empty()) throw PreconditionError("the element list must contain a unit");
  const auto one = PrimeFamilyElement::constant(1);
  const bool has_unit = std::any_of(elements.begin(), elements.end(), [&](const PrimeFamilyElement& e) {
    return filter_equal(e, one, options.prime_bound).equal;
  });
  if (!has_unit) throw PreconditionError("no element is filter-equal to 1");

  ClosureReport r;
  r.char_zero_bound = options.char_zero_bound;
  for (const auto& e : elements) r.exceptions.insert(e.exceptions().begin(), e.exceptions().end());
  const auto primes = primes_up_to(options.prime_bound);

  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i; j < elements.size(); ++j) {
      const auto& a = elements[i];
      const auto& b = elements[j];
      ++r.pairs_checked;
      try {
        const PrimeFamilyElement results[] = {a + b, a - b, a * b};
        for (auto p : primes) {
          if (r.exceptions.count(p)) continue;
          for (const auto& x : results) {
            auto v = x.at(p);
            if (!v) {
              r.failures.push_back(x.str() + " is undefined at " + std::to_string(p));
              break;
            }
            if (v->formal) r.formal_primes.insert(p);
          }
        }
        if (!filter_equal(a * b, b * a, options.prime_bound).equal)
          r.failures.push_back(a.str() + " and " + b.str() + " do not commute");
        for (const auto& c : elements)
          if (!filter_equal(a * (b + c), a * b + a * c, options.prime_bound).equal)
            r.failures.push_back("distributivity fails for " + a.str() + ", " + b.str() + ", " + c.str());
      } catch (const PreconditionError& e) {
        r.failures.push_back(e.what());
      }
    }

  for (std::uint64_t n = 1; n <= options.char_zero_bound; ++n) {
    const auto c = char_zero_certificate(from_u64(n), options.prime_bound);
    if (!c.exact || !c.verified) r.failures.push_back("char-zero certificate fails for n = " + std::to_string(n));
  }
  r.ok = r.failures.empty();
  return r;
}

}  // namespace k0forge::filterprod
