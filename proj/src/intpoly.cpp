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

#include "k0forge/intpoly.hpp"

#include <sstream>

namespace k0forge {

IntPoly IntPoly::monomial(const BigInt& c, std::size_t degree) {
  std::vector<BigInt> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r = r * x + Rational(*it);
    r.canonicalize();
  }
  return r;
}

FpPoly IntPoly::mod_p(const PrimeField& f) const {
  std::vector<std::uint64_t> v;
  v.reserve(c_.size());
  for (const auto& a : c_) v.push_back(f.from_big(a));
  return FpPoly(f, std::move(v));
}

IntPoly IntPoly::reduce_coeffs(const BigInt& m) const {
  std::vector<BigInt> v;
  for (const auto& a : c_) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    v.push_back(r);
  }
  return IntPoly(std::move(v));
}

std::string IntPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const auto& a = c_[i];
    if (a == 0) continue;
    BigInt mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return IntPoly(std::move(v));
}

IntPoly operator*(const BigInt& s, const IntPoly& a) {
  std::vector<BigInt> v;
  for (const auto& c : a.c_) v.push_back(s * c);
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> v;
  for (const auto& c : c_) v.push_back(-c);
  return IntPoly(std::move(v));
}

std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& b) {
  if (!b.is_monic_up_to_sign()) throw PreconditionError("divisor must have leading coefficient +-1");
  if (a.degree() < b.degree()) return {IntPoly{}, a};
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const BigInt lb = b.lead();
  std::vector<BigInt> q(r.size() - db);
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    BigInt c = r[k] * lb;  // lb = +-1 is its own inverse
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= c * bc[j];
  }
  r.resize(db);
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw PreconditionError("cyclotomic polynomial of index 0");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  IntPoly num = IntPoly::monomial(1, n) - IntPoly{1};
  for (unsigned d = 1; d < n; ++d) {
    if (n % d) continue;
    num = divmod_monic(num, cyclotomic_polynomial(d)).first;
  }
  return num;
}

BigInt determinant(IntMatrix m) {
  if (m.rows != m.cols) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Row-reduces an augmented rational matrix; returns pivot columns.
std::vector<std::size_t> rational_echelon(std::vector<std::vector<Rational>>& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[row]);
    Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < a[r].size(); ++j) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows, std::vector<Rational>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m(i, j);
  return rational_echelon(a, m.cols).size();
}

std::optional<std::vector<Rational>> solve_rational(const IntMatrix& m, const std::vector<BigInt>& b) {
  if (b.size() != m.rows) throw PreconditionError("right-hand side has the wrong length");
  std::vector<std::vector<Rational>> a(m.rows, std::vector<Rational>(m.cols + 1));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m(i, j);
    a[i][m.cols] = b[i];
  }
  auto pivots = rational_echelon(a, m.cols + 1);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  std::vector<Rational> x(m.cols, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][m.cols];
  return x;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const BigInt det = determinant(m);
  if (det != 1 && det != -1) throw VerificationError("matrix is not unimodular");
  const std::size_t n = m.rows;
  IntMatrix inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<BigInt> e(n, 0);
    e[col] = 1;
    auto x = solve_rational(m, e);
    if (!x) throw VerificationError("unimodular system has no solution");
    for (std::size_t i = 0; i < n; ++i) {
      if ((*x)[i].get_den() != 1) throw VerificationError("inverse of unimodular matrix not integral");
      inv(i, col) = (*x)[i].get_num();
    }
  }
  return inv;
}

}  // namespace k0forge
