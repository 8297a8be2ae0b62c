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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "k0forge/bigint.hpp"
#include "k0forge/ext_field.hpp"

namespace k0forge::fusion {

using FusionMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Values of a ring map from the fusion ring into an explicit finite field.
struct DimensionCharacter {
  ExtensionField field;
  std::vector<ExtensionField::Element> values;  // one per basis element
};

/// Outcome of the axiom checks; `ok()` iff every check passed.
struct FusionValidation {
  bool associative = false;
  bool commutative = false;
  bool unit_law = false;
  bool dual_involution = false;
  bool nonnegative = false;
  std::optional<bool> dimension_homomorphism;  // absent without a dimension character
  bool ok() const {
    return associative && commutative && unit_law && dual_involution && nonnegative &&
           dimension_homomorphism.value_or(true);
  }
};

/// A based ring with nonnegative integer structure constants
/// b_i b_j = sum_k N_{ij}^k b_k.
class FusionRing {
 public:
  FusionRing(std::vector<std::string> labels, std::size_t unit, std::vector<std::int64_t> structure,
             std::vector<std::size_t> dual, std::optional<DimensionCharacter> dims = std::nullopt);

  /// Z itself: one basis element, the unit.
  static FusionRing integers();

  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t unit() const { return unit_; }
  const std::vector<std::size_t>& dual() const { return dual_; }
  const std::optional<DimensionCharacter>& dimension_character() const { return dims_; }
  const std::vector<std::int64_t>& structure_constants() const { return n_; }

  std::int64_t N(std::size_t i, std::size_t j, std::size_t k) const { return n_[(i * rank() + j) * rank() + k]; }
  /// Matrix of left multiplication by b_i: column j holds b_i b_j.
  FusionMatrix fusion_matrix(std::size_t i) const;
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Product of two elements given in the basis.
  std::vector<BigInt> multiply(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const;
  std::vector<BigInt> basis_vector(std::size_t i) const;

  FusionValidation validate() const;

  /// The based subring on `indices`; throws VerificationError if the span is
  /// not closed under multiplication or duals, or misses the unit.
  FusionRing restrict_to(const std::vector<std::size_t>& indices) const;

 private:
  std::vector<std::string> labels_;
  std::size_t unit_;
  std::vector<std::int64_t> n_;
  std::vector<std::size_t> dual_;
  std::optional<DimensionCharacter> dims_;
};

}  // namespace k0forge::fusion
