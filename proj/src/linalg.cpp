// SPDX-License-Identifier: MIT
#include "wildkz/linalg.hpp"

#include <algorithm>

#include "wildkz/errors.hpp"

namespace wildkz {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::InvalidArgument, "matrix product shape mismatch");
  QMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Q& a = (*this)(i, k);
      if (wildkz::is_zero(a)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Q& b = o(k, j);
        if (!wildkz::is_zero(b)) out(i, j) += a * b;
      }
    }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  QMatrix out = *this;
  out += o;
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  QMatrix out = *this;
  out.add_scaled(o, Q(-1));
  return out;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  add_scaled(o, Q(1));
  return *this;
}

void QMatrix::add_scaled(const QMatrix& o, const Q& s) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::InvalidArgument, "matrix sum shape mismatch");
  if (wildkz::is_zero(s)) return;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!wildkz::is_zero(o.data_[i])) data_[i] += s * o.data_[i];
}

QMatrix QMatrix::scaled(const Q& s) const {
  QMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

QVec QMatrix::apply(const QVec& v) const {
  if (v.size() != cols_) fail(ErrorKind::InvalidArgument, "matrix-vector shape mismatch");
  QVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!wildkz::is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
  return out;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Q& x) { return wildkz::is_zero(x); });
}

bool QMatrix::operator==(const QMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

Q determinant(QMatrix m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Q det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(m(piv, c))) ++piv;
    if (piv == n) return Q(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      Q f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

std::size_t rank(QMatrix m) {
  RowSpace rs(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    QVec row(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    rs.insert(std::move(row));
  }
  return rs.dim();
}

QMatrix inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) fail(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  QMatrix a = m, inv = QMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(a(piv, c))) ++piv;
    if (piv == n) fail(ErrorKind::InvalidArgument, "matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    Q f = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a(r, c))) continue;
      Q g = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= g * a(c, j);
        inv(r, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

QVec RowSpace::reduce(QVec v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t pc = pivots_[r];
    if (is_zero(v[pc])) continue;
    Q f = v[pc];
    const QVec& row = rows_[r];
    for (std::size_t j = 0; j < n_; ++j)
      if (!is_zero(row[j])) v[j] -= f * row[j];
  }
  return v;
}

bool RowSpace::contains(const QVec& v) const {
  QVec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Q& x) { return is_zero(x); });
}

bool RowSpace::insert(QVec v) {
  if (v.size() != n_) fail(ErrorKind::InvalidArgument, "row length mismatch");
  v = reduce(std::move(v));
  std::size_t pc = 0;
  while (pc < n_ && is_zero(v[pc])) ++pc;
  if (pc == n_) return false;
  Q f = 1 / v[pc];
  for (auto& x : v) x *= f;
  // Keep the basis fully reduced so that reduce() is a single pass.
  for (auto& row : rows_) {
    if (is_zero(row[pc])) continue;
    Q g = row[pc];
    for (std::size_t j = 0; j < n_; ++j)
      if (!is_zero(v[j])) row[j] -= g * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(pc);
  return true;
}

std::vector<std::size_t> RowSpace::free_columns() const {
  std::vector<bool> pivot(n_, false);
  for (auto p : pivots_) pivot[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n_; ++j)
    if (!pivot[j]) out.push_back(j);
  return out;
}

}  // namespace wildkz
