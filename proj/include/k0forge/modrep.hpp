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

// Finite-dimensional F_p[C_p]-modules as sums of Jordan blocks, their
// tensor products, stable classes and endomorphisms.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "k0forge/factor.hpp"
#include "k0forge/fp_linalg.hpp"
#include "k0forge/fusion_ring.hpp"

namespace k0forge::modrep {

/// J_{k_1} + ... + J_{k_n}, 1 <= k_i <= p, kept in descending order.
class JordanModule {
 public:
  JordanModule(std::uint64_t p, std::vector<int> blocks);
  static JordanModule block(std::uint64_t p, int k) { return JordanModule(p, {k}); }
  /// Jordan type of a matrix with sigma^p = 1.
  static JordanModule from_action(std::uint64_t p, const FpMatrix& sigma);

  std::uint64_t p() const { return p_; }
  const std::vector<int>& blocks() const { return blocks_; }
  int dimension() const;

  /// sigma = 1 + N, N the block-diagonal shift.
  FpMatrix action() const;
  FpMatrix nilpotent() const;
  /// Module with action (sigma^-1)^T.
  JordanModule dual() const;
  std::string str() const;

  friend JordanModule operator+(const JordanModule& a, const JordanModule& b);
  friend bool operator==(const JordanModule&, const JordanModule&) = default;

 private:
  std::uint64_t p_;
  std::vector<int> blocks_;
};

/// J_a (x) J_b by the closed-form rule; descending block sizes.
std::vector<int> tensor_blocks(std::uint64_t p, int a, int b);
JordanModule tensor(const JordanModule& a, const JordanModule& b);

struct StableK0Class {
  std::uint64_t p = 0;
  std::uint64_t value = 0;
  friend bool operator==(const StableK0Class&, const StableK0Class&) = default;
};

StableK0Class stable_k0(const JordanModule& m);
StableK0Class operator+(const StableK0Class& a, const StableK0Class& b);
StableK0Class operator*(const StableK0Class& a, const StableK0Class& b);

bool commutes_with_action(const JordanModule& m, const FpMatrix& f);
/// Trace of f mod p; throws PreconditionError unless f commutes with sigma.
std::uint64_t categorical_trace(const JordanModule& m, const FpMatrix& f);

/// Endomorphism data for one module: a basis of the commutant of sigma and
/// of the maps that factor through a projective (the image of the trace
/// map phi -> sum_i sigma^i phi sigma^-i).
class EndomorphismSpace {
 public:
  explicit EndomorphismSpace(JordanModule m);

  const JordanModule& module() const { return m_; }
  const std::vector<FpMatrix>& commutant() const { return commutant_; }
  const std::vector<FpMatrix>& projective_maps() const { return projective_; }

  bool factors_through_projective(const FpMatrix& f) const;
  /// Some power of f factors through a projective.
  bool is_stably_nilpotent(const FpMatrix& f) const;

  FpMatrix random_endomorphism(std::mt19937_64& rng) const;
  FpMatrix random_projective_map(std::mt19937_64& rng) const;
  /// Nilpotent Fitting part of a random endomorphism plus a random map
  /// through a projective.
  FpMatrix random_stably_nilpotent(std::mt19937_64& rng) const;

 private:
  FpMatrix combination(const std::vector<FpMatrix>& basis, std::mt19937_64& rng) const;
  bool in_projective_span(const FpMatrix& f) const;

  JordanModule m_;
  std::vector<FpMatrix> commutant_;
  std::vector<FpMatrix> projective_;
  FpMatrix projective_columns_;  // vec(P) for P in projective_
};

/// One filtration layer of J_p (x) X: its class in K0 of the base.
struct FiltrationCheck {
  std::size_t basis_index = 0;
  std::vector<int> layer_dimensions;  // dim ker N^{i+1} / ker N^i, i = 0..p-1
  bool trivial_layers = false;        // N maps each step into the previous one
  bool ok() const;
};

struct ModPReduction {
  std::uint64_t p = 0;
  std::vector<std::string> labels;
  std::vector<std::int64_t> structure_constants;  // N mod p, flattened like FusionRing
  std::vector<std::int64_t> generator;            // coordinates of a ring generator mod p
  FpPoly generator_minimal_polynomial{PrimeField(2)};
  bool monogenic = false;
  std::vector<FpFactor> factors;
  std::string description;  // e.g. "F_19 x F_19"
  std::vector<FiltrationCheck> filtration;
  bool verified() const;
};

/// K0(F)/(p) with a generator, its factorization and the block-filtration
/// divisibility certificate.
ModPReduction verify_mod_p_reduction(const fusion::FusionRing& f, std::uint64_t p);

/// Compares the even Verlinde ring mod p with Z[zeta + zeta^-1]/(p)
/// computed through the residue fields of Z[zeta].
struct ModPCrossCheck {
  std::uint64_t p = 0;
  unsigned ell = 0;
  ModPReduction reduction;
  bool products_agree = false;   // every b_i b_j matches in the residue fields
  bool images_independent = false;
  bool residue_degrees_agree = false;
  bool ok() const { return reduction.verified() && products_agree && images_independent && residue_degrees_agree; }
};

ModPCrossCheck mod_p_cross_check(std::uint64_t p, unsigned ell);

}  // namespace k0forge::modrep
