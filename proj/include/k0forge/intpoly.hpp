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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k0forge/bigint.hpp"
#include "k0forge/poly.hpp"

namespace k0forge {

/// Integer polynomial, constant term first, no trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<long> coeffs) {
    for (auto v : coeffs) c_.emplace_back(v);
    trim();
  }
  static IntPoly monomial(const BigInt& c, std::size_t degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
  BigInt lead() const { return c_.empty() ? BigInt(0) : c_.back(); }
  bool is_monic_up_to_sign() const { return lead() == 1 || lead() == -1; }

  BigInt eval(const BigInt& x) const;
  Rational eval(const Rational& x) const;
  FpPoly mod_p(const PrimeField& f) const;
  /// Coefficients reduced into [0, m) (m > 0).
  IntPoly reduce_coeffs(const BigInt& m) const;
  std::string str(const std::string& var = "x") const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const BigInt& s, const IntPoly& a);
  IntPoly operator-() const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// Division by a polynomial with leading coefficient +-1: a = q*b + r.
std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& b);

/// The n-th cyclotomic polynomial.
IntPoly cyclotomic_polynomial(unsigned n);

/// Dense integer matrix, row-major, for exact determinant and rank.
struct IntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> data;
  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  BigInt& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Fraction-free (Bareiss) determinant.
BigInt determinant(IntMatrix m);
std::size_t rank(const IntMatrix& m);

/// Exact solution of a x = b over Q, when one exists.
std::optional<std::vector<Rational>> solve_rational(const IntMatrix& a, const std::vector<BigInt>& b);

/// Inverse of a unimodular matrix (throws unless det = +-1).
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace k0forge
