#pragma once

#include <optional>
#include <vector>

#include "courant/scalar.hpp"

namespace courant {

// Dense matrix over the field of rational functions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  bool is_zero() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form.  Pivot columns are scanned left to right, so they
// form the lexicographically first maximal independent set of columns.
// Only the first `pivot_cols` columns are eligible as pivots.
RowEchelon row_reduce(Matrix m, int pivot_cols = -1);
int rank(const Matrix& m);
Scalar determinant(Matrix m);
Matrix inverse(const Matrix& m);  // throws DomainError when singular

// Solves A X = B with free variables set to zero; nullopt when inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

}  // namespace courant
