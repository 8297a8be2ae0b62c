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

// Dense linear algebra over F_p on Eigen integer matrices. Entries are kept
// in [0, p); p is limited to 2^20 so that a length-4096 dot product of
// reduced entries cannot overflow int64.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace k0forge {

using FpMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using FpVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline constexpr std::uint64_t kMaxMatrixPrime = std::uint64_t{1} << 20;

template <typename Derived>
FpMatrix reduce_mod(const Eigen::MatrixBase<Derived>& m, std::uint64_t p) {
  const auto pp = static_cast<std::int64_t>(p);
  return m.unaryExpr([pp](std::int64_t x) { return ((x % pp) + pp) % pp; });
}

FpMatrix matmul_mod(const FpMatrix& a, const FpMatrix& b, std::uint64_t p);
FpMatrix matpow_mod(FpMatrix a, std::uint64_t e, std::uint64_t p);

struct RowEchelon {
  FpMatrix reduced;                  // reduced row echelon form
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

RowEchelon row_reduce(FpMatrix m, std::uint64_t p);
Eigen::Index rank_mod(const FpMatrix& m, std::uint64_t p);

/// Columns form a basis of {x : m x = 0}.
FpMatrix nullspace_mod(const FpMatrix& m, std::uint64_t p);

/// Some x with a x = b, if one exists.
std::optional<FpVector> solve_mod(const FpMatrix& a, const FpVector& b, std::uint64_t p);

/// Determinant over F_p.
std::int64_t det_mod(FpMatrix m, std::uint64_t p);

/// Block sizes (descending) of the Jordan form of a nilpotent matrix,
/// read off from the ranks of its powers.
std::vector<int> nilpotent_jordan_type(const FpMatrix& n, std::uint64_t p);

}  // namespace k0forge
