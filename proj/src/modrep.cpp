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

#include "k0forge/modrep.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "k0forge/cyclotomic.hpp"
#include "k0forge/primes.hpp"
#include "k0forge/tilting.hpp"

namespace k0forge::modrep {

namespace {

FpMatrix kron(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Column-major vectorization, matching vec(AXB) = (B^T (x) A) vec(X).
FpVector vec(const FpMatrix& m) { return Eigen::Map<const FpVector>(m.data(), m.size()); }

FpMatrix unvec(const FpVector& v, Eigen::Index n) { return Eigen::Map<const FpMatrix>(v.data(), n, n); }

FpMatrix matpow_big(FpMatrix a, BigInt e, std::uint64_t p) {
  FpMatrix r = FpMatrix::Identity(a.rows(), a.cols());
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = matmul_mod(r, a, p);
    a = matmul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

// A multiple of the order of every element of GL_n(F_p).
BigInt gl_exponent(std::uint64_t p, int n) {
  BigInt e = 1;
  for (int i = 1; i <= n; ++i) {
    const BigInt t = big_pow(from_u64(p), static_cast<unsigned long>(i)) - 1;
    e = e / big_gcd(e, t) * t;
  }
  BigInt pt = 1;
  while (pt < n) pt *= from_u64(p);
  return e * pt;
}

std::uint64_t trace_mod(const FpMatrix& f, std::uint64_t p) {
  const auto pp = static_cast<std::int64_t>(p);
  std::int64_t t = 0;
  for (Eigen::Index i = 0; i < f.rows(); ++i) t = (t + f(i, i) % pp + pp) % pp;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

JordanModule::JordanModule(std::uint64_t p, std::vector<int> blocks) : p_(p), blocks_(std::move(blocks)) {
  require_prime(p, "p");
  if (p >= kMaxMatrixPrime) throw PreconditionError("p is too large for matrix models");
  for (int k : blocks_)
    if (k < 1 || static_cast<std::uint64_t>(k) > p)
      throw PreconditionError("Jordan block size " + std::to_string(k) + " outside 1.." + std::to_string(p));
  std::sort(blocks_.begin(), blocks_.end(), std::greater<>());
}

JordanModule JordanModule::from_action(std::uint64_t p, const FpMatrix& sigma) {
  const auto n = sigma.rows();
  if (matpow_mod(sigma, p, p) != FpMatrix::Identity(n, n))
    throw PreconditionError("matrix does not satisfy sigma^p = 1");
  FpMatrix nil = reduce_mod(sigma - FpMatrix::Identity(n, n), p);
  return JordanModule(p, nilpotent_jordan_type(nil, p));
}

int JordanModule::dimension() const { return std::accumulate(blocks_.begin(), blocks_.end(), 0); }

FpMatrix JordanModule::nilpotent() const {
  const int n = dimension();
  FpMatrix m = FpMatrix::Zero(n, n);
  int off = 0;
  for (int k : blocks_) {
    for (int i = 0; i + 1 < k; ++i) m(off + i, off + i + 1) = 1;
    off += k;
  }
  return m;
}

FpMatrix JordanModule::action() const {
  const int n = dimension();
  return nilpotent() + FpMatrix::Identity(n, n);
}

JordanModule JordanModule::dual() const {
  FpMatrix inv = matpow_mod(action(), p_ - 1, p_);
  return from_action(p_, inv.transpose());
}

std::string JordanModule::str() const {
  if (blocks_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? " + J" : "J") + std::to_string(blocks_[i]);
  return s;
}

JordanModule operator+(const JordanModule& a, const JordanModule& b) {
  if (a.p_ != b.p_) throw PreconditionError("mismatched p");
  auto blocks = a.blocks_;
  blocks.insert(blocks.end(), b.blocks_.begin(), b.blocks_.end());
  return JordanModule(a.p_, std::move(blocks));
}

std::vector<int> tensor_blocks(std::uint64_t p, int a, int b) {
  const int pp = static_cast<int>(p);
  if (a < 1 || b < 1 || a > pp || b > pp) throw PreconditionError("block size outside 1..p");
  if (a > b) std::swap(a, b);
  std::vector<int> out;
  if (a + b <= pp) {
    for (int i = 1; i <= a; ++i) out.push_back(b - a + 2 * i - 1);
  } else {
    out.assign(static_cast<std::size_t>(a + b - pp), pp);
    for (int i = 1; i <= pp - b; ++i) out.push_back(b - a + 2 * i - 1);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

JordanModule tensor(const JordanModule& a, const JordanModule& b) {
  if (a.p() != b.p()) throw PreconditionError("mismatched p");
  std::vector<int> blocks;
  for (int x : a.blocks())
    for (int y : b.blocks()) {
      auto t = tensor_blocks(a.p(), x, y);
      blocks.insert(blocks.end(), t.begin(), t.end());
    }
  return JordanModule(a.p(), std::move(blocks));
}

StableK0Class stable_k0(const JordanModule& m) {
  return {m.p(), static_cast<std::uint64_t>(m.dimension()) % m.p()};
}

StableK0Class operator+(const StableK0Class& a, const StableK0Class& b) {
  if (a.p != b.p) throw PreconditionError("mismatched p");
  return {a.p, (a.value + b.value) % a.p};
}

StableK0Class operator*(const StableK0Class& a, const StableK0Class& b) {
  if (a.p != b.p) throw PreconditionError("mismatched p");
  return {a.p, a.value * b.value % a.p};
}

bool commutes_with_action(const JordanModule& m, const FpMatrix& f) {
  const auto n = m.dimension();
  if (f.rows() != n || f.cols() != n) return false;
  const auto s = m.action();
  return reduce_mod(matmul_mod(f, s, m.p()) - matmul_mod(s, f, m.p()), m.p()).isZero();
}

std::uint64_t categorical_trace(const JordanModule& m, const FpMatrix& f) {
  if (!commutes_with_action(m, f)) throw PreconditionError("endomorphism does not commute with sigma");
  return trace_mod(f, m.p());
}

EndomorphismSpace::EndomorphismSpace(JordanModule m) : m_(std::move(m)) {
  const auto p = m_.p();
  const Eigen::Index n = m_.dimension();
  const FpMatrix id = FpMatrix::Identity(n, n);
  const FpMatrix s = m_.action();

  // X s - s X = 0.
  const FpMatrix lin = reduce_mod(kron(s.transpose(), id) - kron(id, s), p);
  const FpMatrix ns = nullspace_mod(lin, p);
  for (Eigen::Index c = 0; c < ns.cols(); ++c) commutant_.push_back(unvec(ns.col(c), n));

  // phi -> sum_k s^k phi s^-k.
  FpMatrix tr = FpMatrix::Zero(n * n, n * n);
  FpMatrix sk = id, sinvk = id;
  const FpMatrix sinv = matpow_mod(s, p - 1, p);
  for (std::uint64_t k = 0; k < p; ++k) {
    tr = reduce_mod(tr + kron(sinvk.transpose(), sk), p);
    sk = matmul_mod(sk, s, p);
    sinvk = matmul_mod(sinvk, sinv, p);
  }
  const auto ech = row_reduce(tr, p);
  projective_columns_.resize(n * n, ech.rank());
  for (Eigen::Index c = 0; c < ech.rank(); ++c) {
    projective_columns_.col(c) = tr.col(ech.pivots[static_cast<std::size_t>(c)]);
    projective_.push_back(unvec(projective_columns_.col(c), n));
  }
}

bool EndomorphismSpace::in_projective_span(const FpMatrix& f) const {
  const auto p = m_.p();
  if (projective_columns_.cols() == 0) return reduce_mod(f, p).isZero();
  FpMatrix aug(projective_columns_.rows(), projective_columns_.cols() + 1);
  aug << projective_columns_, vec(reduce_mod(f, p));
  return rank_mod(aug, p) == projective_columns_.cols();
}

bool EndomorphismSpace::factors_through_projective(const FpMatrix& f) const {
  return commutes_with_action(m_, f) && in_projective_span(f);
}

bool EndomorphismSpace::is_stably_nilpotent(const FpMatrix& f) const {
  if (!commutes_with_action(m_, f)) return false;
  // A nilpotent element of an algebra of dimension d satisfies x^{d+1} = 0;
  // here the algebra is End / (maps through projectives).
  const auto d = commutant_.size() - projective_.size();
  return in_projective_span(matpow_mod(reduce_mod(f, m_.p()), d + 1, m_.p()));
}

FpMatrix EndomorphismSpace::combination(const std::vector<FpMatrix>& basis, std::mt19937_64& rng) const {
  const auto p = m_.p();
  const Eigen::Index n = m_.dimension();
  FpMatrix out = FpMatrix::Zero(n, n);
  for (const auto& b : basis) out = reduce_mod(out + static_cast<std::int64_t>(rng() % p) * b, p);
  return out;
}

FpMatrix EndomorphismSpace::random_endomorphism(std::mt19937_64& rng) const { return combination(commutant_, rng); }

FpMatrix EndomorphismSpace::random_projective_map(std::mt19937_64& rng) const {
  return combination(projective_, rng);
}

FpMatrix EndomorphismSpace::random_stably_nilpotent(std::mt19937_64& rng) const {
  const auto p = m_.p();
  const Eigen::Index n = m_.dimension();
  const FpMatrix c = random_endomorphism(rng);
  // g = c^n is zero on the generalized kernel and invertible on its image,
  // so g^E is the projection onto the image.
  const FpMatrix g = matpow_mod(c, static_cast<std::uint64_t>(n), p);
  const FpMatrix e = matpow_big(g, gl_exponent(p, static_cast<int>(n)), p);
  FpMatrix f = matmul_mod(c, reduce_mod(FpMatrix::Identity(n, n) - e, p), p);
  if (rng() % 4 != 0) f = reduce_mod(f + random_projective_map(rng), p);
  return f;
}

bool FiltrationCheck::ok() const {
  return trivial_layers && std::all_of(layer_dimensions.begin(), layer_dimensions.end(), [](int d) { return d == 1; });
}

bool ModPReduction::verified() const {
  return !filtration.empty() && std::all_of(filtration.begin(), filtration.end(), [](const auto& c) { return c.ok(); });
}

ModPReduction verify_mod_p_reduction(const fusion::FusionRing& f, std::uint64_t p) {
  require_prime(p, "p");
  if (p >= kMaxMatrixPrime) throw PreconditionError("p is too large for matrix models");
  const PrimeField fp(p);
  const auto r = static_cast<Eigen::Index>(f.rank());
  ModPReduction out;
  out.p = p;
  out.labels = f.labels();
  for (auto c : f.structure_constants()) out.structure_constants.push_back(static_cast<std::int64_t>(fp.from_int(c)));

  std::vector<FpMatrix> left;
  for (Eigen::Index i = 0; i < r; ++i) left.push_back(reduce_mod(f.fusion_matrix(static_cast<std::size_t>(i)), p));

  // Minimal polynomial of x in K0/(p), from the Krylov sequence of the unit.
  auto krylov = [&](const FpVector& x) {
    FpMatrix lx = FpMatrix::Zero(r, r);
    for (Eigen::Index i = 0; i < r; ++i) lx = reduce_mod(lx + x(i) * left[static_cast<std::size_t>(i)], p);
    FpMatrix cols(r, 0);
    FpVector v = FpVector::Zero(r);
    v(static_cast<Eigen::Index>(f.unit())) = 1;
    while (true) {
      if (cols.cols() > 0) {
        if (auto sol = solve_mod(cols, v, p)) {
          std::vector<std::uint64_t> c;
          for (Eigen::Index k = 0; k < sol->size(); ++k) c.push_back(fp.neg(static_cast<std::uint64_t>((*sol)(k))));
          c.push_back(1);
          return FpPoly(fp, c);
        }
      }
      cols.conservativeResize(r, cols.cols() + 1);
      cols.col(cols.cols() - 1) = v;
      v = reduce_mod(lx * v, p);
    }
  };

  std::vector<FpVector> candidates;
  for (Eigen::Index i = 0; i < r; ++i) candidates.push_back(FpVector::Unit(r, i));
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = i + 1; j < r; ++j) candidates.push_back(FpVector::Unit(r, i) + FpVector::Unit(r, j));
  std::mt19937_64 rng(0x6b30);
  for (int t = 0; t < 64; ++t) {
    FpVector x(r);
    for (Eigen::Index i = 0; i < r; ++i) x(i) = static_cast<std::int64_t>(rng() % p);
    candidates.push_back(x);
  }
  FpVector best = candidates.front();
  FpPoly best_mp = krylov(best);
  for (const auto& x : candidates) {
    auto mp = krylov(x);
    if (mp.degree() > best_mp.degree()) {
      best = x;
      best_mp = mp;
    }
    if (best_mp.degree() == r) break;
  }
  out.generator.assign(best.data(), best.data() + r);
  out.generator_minimal_polynomial = best_mp;
  out.monogenic = best_mp.degree() == r;
  out.factors = factor(best_mp);

  auto prod = FpPoly::constant(fp, 1);
  for (const auto& [g, m] : out.factors)
    for (int i = 0; i < m; ++i) prod = prod * g;
  if (prod != best_mp) throw VerificationError("factorization of the generator's minimal polynomial does not multiply back");

  if (out.monogenic) {
    for (std::size_t i = 0; i < out.factors.size(); ++i) {
      const auto& [g, m] = out.factors[i];
      if (i) out.description += " x ";
      const std::string q = to_string(big_pow(from_u64(p), static_cast<unsigned long>(g.degree())));
      out.description += m == 1 ? "F_" + q : "F_" + std::to_string(p) + "[y]/(" + poly_str(g, "y") + ")^" + std::to_string(m);
    }
  } else {
    out.description = "F_" + std::to_string(p) + "-algebra of dimension " + std::to_string(r) + " (not monogenic)";
  }

  // J_p (x) X filtered by the powers of the augmentation ideal: p layers,
  // each a copy of X with trivial action, so its class is p [X].
  const auto jp = JordanModule::block(p, static_cast<int>(p));
  const FpMatrix nil = jp.nilpotent();
  std::vector<Eigen::Index> ranks{static_cast<Eigen::Index>(p)};
  FpMatrix pw = FpMatrix::Identity(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  bool trivial = true;
  for (std::uint64_t i = 1; i <= p; ++i) {
    FpMatrix next = matmul_mod(nil, pw, p);
    // m^i = N m^{i-1}, so N is zero on m^{i-1}/m^i; check m^i is N-stable.
    ranks.push_back(rank_mod(next, p));
    FpMatrix aug(next.rows(), next.cols() * 2);
    aug << next, matmul_mod(nil, next, p);
    if (rank_mod(aug, p) != ranks.back()) trivial = false;
    pw = next;
  }
  for (Eigen::Index i = 0; i < r; ++i) {
    FiltrationCheck fc;
    fc.basis_index = static_cast<std::size_t>(i);
    for (std::size_t k = 0; k + 1 < ranks.size(); ++k) fc.layer_dimensions.push_back(static_cast<int>(ranks[k] - ranks[k + 1]));
    fc.trivial_layers = trivial && ranks.back() == 0;
    out.filtration.push_back(std::move(fc));
  }
  return out;
}

ModPCrossCheck mod_p_cross_check(std::uint64_t p, unsigned ell) {
  ModPCrossCheck out;
  out.p = p;
  out.ell = ell;
  const auto even = fusion::even_subring(fusion::build_semisimple_fusion(p, ell));
  out.reduction = verify_mod_p_reduction(even, p);
  const auto cert = fusion::k0_isomorphism_certificate(even);

  cyclo::ResidueMap rm(cyclo::splitting_data(p, ell));
  std::vector<cyclo::ResidueMap::Image> img;
  for (const auto& x : cert.images) img.push_back(rm(x));
  const auto h = even.rank();
  const auto& nmod = out.reduction.structure_constants;

  out.products_agree = true;
  for (std::size_t i = 0; i < h && out.products_agree; ++i) {
    for (std::size_t j = 0; j < h && out.products_agree; ++j) {
      auto rhs = rm.scale(img[0], 0);
      for (std::size_t k = 0; k < h; ++k) {
        const auto c = nmod[(i * h + j) * h + k];
        if (c) rhs = rm.add(rhs, rm.scale(img[k], static_cast<std::uint64_t>(c)));
      }
      if (rm.mul(img[i], img[j]) != rhs) out.products_agree = false;
    }
  }

  std::size_t coords = 0;
  for (const auto& fld : rm.fields()) coords += static_cast<std::size_t>(fld.degree());
  FpMatrix m(static_cast<Eigen::Index>(coords), static_cast<Eigen::Index>(h));
  for (std::size_t a = 0; a < h; ++a) {
    Eigen::Index row = 0;
    for (const auto& e : img[a])
      for (auto c : e) m(row++, static_cast<Eigen::Index>(a)) = static_cast<std::int64_t>(c);
  }
  out.images_independent = rank_mod(m, p) == static_cast<Eigen::Index>(h);

  // Z[c]/(p) splits into fields of degree ord of p in (Z/l)^* / {+-1}.
  const auto d = static_cast<int>(multiplicative_order(p % ell, ell));
  const int dplus = d % 2 == 0 ? d / 2 : d;
  out.residue_degrees_agree = out.reduction.monogenic &&
                              out.reduction.factors.size() == h / static_cast<std::size_t>(dplus);
  for (const auto& [g, mult] : out.reduction.factors)
    if (g.degree() != dplus || mult != 1) out.residue_degrees_agree = false;
  return out;
}

}  // namespace k0forge::modrep
