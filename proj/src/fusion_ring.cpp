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

#include "k0forge/fusion_ring.hpp"

#include <algorithm>

namespace k0forge::fusion {

FusionRing::FusionRing(std::vector<std::string> labels, std::size_t unit,
                       std::vector<std::int64_t> structure, std::vector<std::size_t> dual,
                       std::optional<DimensionCharacter> dims)
    : labels_(std::move(labels)),
      unit_(unit),
      n_(std::move(structure)),
      dual_(std::move(dual)),
      dims_(std::move(dims)) {
  const auto r = labels_.size();
  if (r == 0) throw PreconditionError("fusion ring needs at least one basis element");
  if (unit_ >= r) throw PreconditionError("unit index out of range");
  if (n_.size() != r * r * r) throw PreconditionError("structure constant tensor has the wrong size");
  if (dual_.size() != r) throw PreconditionError("dual map has the wrong size");
  for (auto d : dual_)
    if (d >= r) throw PreconditionError("dual index out of range");
  if (dims_ && dims_->values.size() != r) throw PreconditionError("dimension character has the wrong size");
}

FusionRing FusionRing::integers() { return FusionRing({"1"}, 0, {1}, {0}); }

FusionMatrix FusionRing::fusion_matrix(std::size_t i) const {
  const auto r = static_cast<Eigen::Index>(rank());
  FusionMatrix m(r, r);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index k = 0; k < r; ++k)
      m(k, j) = N(i, static_cast<std::size_t>(j), static_cast<std::size_t>(k));
  return m;
}

std::optional<std::size_t> FusionRing::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<BigInt> FusionRing::multiply(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
  const auto r = rank();
  std::vector<BigInt> out(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (b[j] == 0) continue;
      BigInt ab = a[i] * b[j];
      for (std::size_t k = 0; k < r; ++k) {
        const auto c = N(i, j, k);
        if (c) out[k] += ab * c;
      }
    }
  }
  return out;
}

std::vector<BigInt> FusionRing::basis_vector(std::size_t i) const {
  std::vector<BigInt> v(rank());
  v.at(i) = 1;
  return v;
}

FusionValidation FusionRing::validate() const {
  FusionValidation v;
  const auto r = rank();
  v.nonnegative = std::all_of(n_.begin(), n_.end(), [](std::int64_t x) { return x >= 0; });

  std::vector<FusionMatrix> L;
  for (std::size_t i = 0; i < r; ++i) L.push_back(fusion_matrix(i));

  v.unit_law = L[unit_] == FusionMatrix::Identity(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < r && v.unit_law; ++i)
    for (std::size_t k = 0; k < r; ++k)
      if (N(i, unit_, k) != (i == k ? 1 : 0)) v.unit_law = false;

  v.commutative = true;
  for (std::size_t i = 0; i < r && v.commutative; ++i)
    for (std::size_t j = 0; j < r && v.commutative; ++j)
      for (std::size_t k = 0; k < r; ++k)
        if (N(i, j, k) != N(j, i, k)) {
          v.commutative = false;
          break;
        }

  // (b_i b_j) b_k = b_i (b_j b_k) for all k  <=>  L_i L_j = sum_m N_ij^m L_m.
  v.associative = true;
  for (std::size_t i = 0; i < r && v.associative; ++i) {
    for (std::size_t j = 0; j < r && v.associative; ++j) {
      FusionMatrix rhs = FusionMatrix::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
      for (std::size_t m = 0; m < r; ++m)
        if (N(i, j, m)) rhs += N(i, j, m) * L[m];
      if (L[i] * L[j] != rhs) v.associative = false;
    }
  }

  v.dual_involution = dual_[unit_] == unit_;
  for (std::size_t i = 0; i < r; ++i) {
    if (dual_[dual_[i]] != i) v.dual_involution = false;
    // The unit occurs in b_i b_j exactly when j is dual to i.
    for (std::size_t j = 0; j < r; ++j)
      if ((N(i, j, unit_) != 0) != (j == dual_[i])) v.dual_involution = false;
  }

  if (dims_) {
    const auto& f = dims_->field;
    const auto& d = dims_->values;
    bool hom = d[unit_] == f.one();
    for (std::size_t i = 0; i < r && hom; ++i) {
      for (std::size_t j = 0; j < r && hom; ++j) {
        auto rhs = f.zero();
        for (std::size_t k = 0; k < r; ++k)
          if (N(i, j, k)) rhs = f.add(rhs, f.mul(f.from_int(N(i, j, k)), d[k]));
        if (f.mul(d[i], d[j]) != rhs) hom = false;
      }
    }
    v.dimension_homomorphism = hom;
  }
  return v;
}

FusionRing FusionRing::restrict_to(const std::vector<std::size_t>& indices) const {
  const auto r = rank();
  std::vector<std::ptrdiff_t> pos(r, -1);
  for (std::size_t a = 0; a < indices.size(); ++a) pos.at(indices[a]) = static_cast<std::ptrdiff_t>(a);
  if (pos[unit_] < 0) throw VerificationError("restriction does not contain the unit");
  const auto s = indices.size();
  std::vector<std::int64_t> n(s * s * s);
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      for (std::size_t k = 0; k < r; ++k) {
        const auto c = N(indices[a], indices[b], k);
        if (!c) continue;
        if (pos[k] < 0)
          throw VerificationError("restriction not closed: " + labels_[indices[a]] + " * " +
                                  labels_[indices[b]] + " contains " + labels_[k]);
        n[(a * s + b) * s + static_cast<std::size_t>(pos[k])] = c;
      }
    }
  }
  std::vector<std::string> labels;
  std::vector<std::size_t> dual;
  for (auto i : indices) {
    labels.push_back(labels_[i]);
    if (pos[dual_[i]] < 0) throw VerificationError("restriction not closed under duals");
    dual.push_back(static_cast<std::size_t>(pos[dual_[i]]));
  }
  std::optional<DimensionCharacter> dims;
  if (dims_) {
    DimensionCharacter dc{dims_->field, {}};
    for (auto i : indices) dc.values.push_back(dims_->values[i]);
    dims = std::move(dc);
  }
  return FusionRing(std::move(labels), static_cast<std::size_t>(pos[unit_]), std::move(n), std::move(dual),
                    std::move(dims));
}

}  // namespace k0forge::fusion
