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

#include "k0forge/fp_linalg.hpp"

#include <algorithm>

#include "k0forge/bigint.hpp"
#include "k0forge/primes.hpp"

namespace k0forge {

namespace {

void check_prime(std::uint64_t p) {
  if (p >= kMaxMatrixPrime) throw PreconditionError("matrix prime exceeds 2^20");
}

}  // namespace

FpMatrix matmul_mod(const FpMatrix& a, const FpMatrix& b, std::uint64_t p) {
  check_prime(p);
  if (a.cols() != b.rows()) throw PreconditionError("matrix shapes do not match");
  FpMatrix c = a * b;
  return reduce_mod(c, p);
}

FpMatrix matpow_mod(FpMatrix a, std::uint64_t e, std::uint64_t p) {
  FpMatrix r = FpMatrix::Identity(a.rows(), a.cols());
  while (e) {
    if (e & 1) r = matmul_mod(r, a, p);
    e >>= 1;
    if (e) a = matmul_mod(a, a, p);
  }
  return reduce_mod(r, p);
}

RowEchelon row_reduce(FpMatrix m, std::uint64_t p) {
  check_prime(p);
  m = reduce_mod(m, p);
  const auto pp = static_cast<std::int64_t>(p);
  RowEchelon out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.row(piv).swap(m.row(row));
    const auto inv = static_cast<std::int64_t>(inv_mod(static_cast<std::uint64_t>(m(row, col)), p));
    m.row(row) = (m.row(row) * inv).unaryExpr([pp](std::int64_t x) { return x % pp; });
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const std::int64_t f = m(r, col);
      m.row(r) = (m.row(r) - f * m.row(row)).unaryExpr([pp](std::int64_t x) {
        return ((x % pp) + pp) % pp;
      });
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

Eigen::Index rank_mod(const FpMatrix& m, std::uint64_t p) { return row_reduce(m, p).rank(); }

FpMatrix nullspace_mod(const FpMatrix& m, std::uint64_t p) {
  auto ech = row_reduce(m, p);
  const auto n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  FpMatrix basis = FpMatrix::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
  const auto pp = static_cast<std::int64_t>(p);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const auto fc = free_cols[k];
    const auto col = static_cast<Eigen::Index>(k);
    basis(fc, col) = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      const auto v = ech.reduced(static_cast<Eigen::Index>(r), fc);
      basis(ech.pivots[r], col) = (pp - v) % pp;
    }
  }
  return basis;
}

std::optional<FpVector> solve_mod(const FpMatrix& a, const FpVector& b, std::uint64_t p) {
  FpMatrix aug(a.rows(), a.cols() + 1);
  aug << a, b;
  auto ech = row_reduce(aug, p);
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  FpVector x = FpVector::Zero(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    x(ech.pivots[r]) = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

std::int64_t det_mod(FpMatrix m, std::uint64_t p) {
  check_prime(p);
  if (m.rows() != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  m = reduce_mod(m, p);
  const auto pp = static_cast<std::int64_t>(p);
  std::int64_t det = 1;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index piv = c;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) return 0;
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = (pp - det) % pp;
    }
    det = det * m(c, c) % pp;
    const auto inv = static_cast<std::int64_t>(inv_mod(static_cast<std::uint64_t>(m(c, c)), p));
    for (Eigen::Index r = c + 1; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      const std::int64_t f = m(r, c) * inv % pp;
      m.row(r) = (m.row(r) - f * m.row(c)).unaryExpr([pp](std::int64_t x) {
        return ((x % pp) + pp) % pp;
      });
    }
  }
  return det;
}

std::vector<int> nilpotent_jordan_type(const FpMatrix& n, std::uint64_t p) {
  const auto dim = n.rows();
  // ranks[j] = rank(n^j); blocks of size >= j number ranks[j-1] - ranks[j].
  std::vector<Eigen::Index> ranks{dim};
  FpMatrix power = FpMatrix::Identity(dim, dim);
  while (ranks.back() > 0) {
    power = matmul_mod(power, n, p);
    auto r = rank_mod(power, p);
    if (r == ranks.back()) throw PreconditionError("matrix is not nilpotent");
    ranks.push_back(r);
  }
  std::vector<int> blocks;
  const auto top = ranks.size() - 1;
  for (std::size_t j = top; j >= 1; --j) {
    const auto at_least_j = ranks[j - 1] - ranks[j];
    const auto at_least_next = j + 1 <= top ? ranks[j] - ranks[j + 1] : 0;
    for (Eigen::Index k = 0; k < at_least_j - at_least_next; ++k)
      blocks.push_back(static_cast<int>(j));
  }
  return blocks;
}

}  // namespace k0forge
