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

// Brute-force reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls the code it is used to check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "k0forge/fp_linalg.hpp"

namespace k0forge::oracle {

inline FpMatrix unipotent_block(int k) {
  FpMatrix m = FpMatrix::Identity(k, k);
  for (int i = 0; i + 1 < k; ++i) m(i, i + 1) = 1;
  return m;
}

inline FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b, std::uint64_t p) {
  FpMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l) % static_cast<std::int64_t>(p);
  return out;
}

/// Jordan type of a unipotent matrix, read off from ranks of powers of
/// sigma - 1: the number of blocks of size >= k is r_{k-1} - r_k.
inline std::vector<int> unipotent_jordan_type(const FpMatrix& sigma, std::uint64_t p) {
  const auto n = sigma.rows();
  FpMatrix nil = reduce_mod(sigma - FpMatrix::Identity(n, n), p);
  std::vector<Eigen::Index> r{n};
  FpMatrix pw = FpMatrix::Identity(n, n);
  while (r.back() > 0) {
    pw = matmul_mod(pw, nil, p);
    r.push_back(rank_mod(pw, p));
  }
  std::vector<int> blocks;
  for (std::size_t k = 1; k < r.size(); ++k) {
    const auto at_least_k = r[k - 1] - r[k];
    const auto at_least_k1 = k + 1 < r.size() ? r[k] - r[k + 1] : 0;
    for (Eigen::Index c = 0; c < at_least_k - at_least_k1; ++c) blocks.push_back(static_cast<int>(k));
  }
  std::sort(blocks.begin(), blocks.end(), std::greater<>());
  return blocks;
}

/// J_a (x) J_b decomposed from the explicit diagonal action.
inline std::vector<int> tensor_by_matrix(std::uint64_t p, int a, int b) {
  return unipotent_jordan_type(kronecker(unipotent_block(a), unipotent_block(b), p), p);
}

inline FpMatrix block_diagonal_action(const std::vector<int>& blocks) {
  int n = 0;
  for (int k : blocks) n += k;
  FpMatrix s = FpMatrix::Zero(n, n);
  int off = 0;
  for (int k : blocks) {
    s.block(off, off, k, k) = unipotent_block(k);
    off += k;
  }
  return s;
}

/// Basis of {X : X s = t X} for actions s (on the source) and t (target).
inline std::vector<FpMatrix> intertwiners(const FpMatrix& s, const FpMatrix& t, std::uint64_t p) {
  const auto m = s.rows(), n = t.rows();
  // Unknowns X(i, j), index i * m + j; equation (i, j): sum_k X(i,k) s(k,j) - t(i,k) X(k,j).
  FpMatrix eq = FpMatrix::Zero(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto row = i * m + j;
      for (Eigen::Index k = 0; k < m; ++k) eq(row, i * m + k) += s(k, j);
      for (Eigen::Index k = 0; k < n; ++k) eq(row, k * m + j) -= t(i, k);
    }
  const FpMatrix ns = nullspace_mod(reduce_mod(eq, p), p);
  std::vector<FpMatrix> out;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    FpMatrix x(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < m; ++j) x(i, j) = ns(i * m + j, c);
    out.push_back(x);
  }
  return out;
}

/// Span of all composites M -> J_p -> M, as vectorized columns.
inline FpMatrix maps_through_free_module(const std::vector<int>& blocks, std::uint64_t p) {
  const FpMatrix s = block_diagonal_action(blocks);
  const FpMatrix free = unipotent_block(static_cast<int>(p));
  const auto in = intertwiners(s, free, p);   // M -> J_p
  const auto out = intertwiners(free, s, p);  // J_p -> M
  const auto n = s.rows();
  FpMatrix cols(n * n, static_cast<Eigen::Index>(in.size() * out.size()));
  Eigen::Index c = 0;
  for (const auto& b : out)
    for (const auto& a : in) {
      const FpMatrix f = matmul_mod(b, a, p);
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) cols(j * n + i, c) = f(i, j);
      ++c;
    }
  return cols;
}

}  // namespace k0forge::oracle
