// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "branchdual/error.hpp"
#include "branchdual/rational.hpp"

namespace branchdual {

using QVector = std::vector<Rational>;

// Dense row-major matrix over the rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QMatrix transposed() const;
  QVector operator*(const QVector& x) const;
  QMatrix operator*(const QMatrix& other) const;

  bool operator==(const QMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

struct RowEchelon {
  QMatrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
  std::size_t rank() const { return pivots.size(); }
};

RowEchelon rref(QMatrix m);

// Basis of {x : Mx = 0}. Vector k sets the k-th free column to 1 and the other
// free columns to 0.
std::vector<QVector> nullspace(const QMatrix& m);

struct LinearSolution {
  QVector particular;             // free variables set to zero
  std::vector<QVector> homogeneous;
};

// std::nullopt when the system is inconsistent. Throws InvalidArgument when
// b.size() != m.rows().
std::optional<LinearSolution> solve(const QMatrix& m, const QVector& b);

// Canonical basis of span(vectors): the nonzero rows of the reduced row-echelon form.
std::vector<QVector> row_basis(const std::vector<QVector>& vectors, std::size_t dim);

bool is_zero_vector(const QVector& v);

}  // namespace branchdual
