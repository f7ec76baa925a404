// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <vector>

#include "wildkz/rational.hpp"

namespace wildkz {

// Dense exact matrix. Slices handled here stay below a few hundred rows, so
// a dense layout keeps the code simple.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Q& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Q& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix operator*(const QMatrix& other) const;
  QMatrix operator+(const QMatrix& other) const;
  QMatrix operator-(const QMatrix& other) const;
  QMatrix& operator+=(const QMatrix& other);
  QMatrix scaled(const Q& s) const;
  void add_scaled(const QMatrix& other, const Q& s);
  QMatrix transpose() const;
  QVec apply(const QVec& v) const;
  bool is_zero() const;
  bool operator==(const QMatrix& other) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Q> data_;
};

QMatrix commutator(const QMatrix& a, const QMatrix& b);
Q determinant(QMatrix m);
std::size_t rank(QMatrix m);
// Throws InvalidArgument when singular.
QMatrix inverse(const QMatrix& m);

// Incrementally maintained reduced row echelon basis of a subspace of Q^n.
class RowSpace {
 public:
  explicit RowSpace(std::size_t n) : n_(n) {}

  // Returns true when v enlarged the span.
  bool insert(QVec v);
  // Reduces v modulo the span; the result has zeros in every pivot column.
  QVec reduce(QVec v) const;
  bool contains(const QVec& v) const;

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<QVec>& rows() const { return rows_; }
  // Columns without a pivot, in increasing order.
  std::vector<std::size_t> free_columns() const;

 private:
  std::size_t n_;
  std::vector<QVec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace wildkz
