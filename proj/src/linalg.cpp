#include "courant/linalg.hpp"

#include <utility>

namespace courant {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
      }
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw DomainError("matrix shape mismatch");
  }
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw DomainError("matrix shape mismatch");
  }
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

RowEchelon row_reduce(Matrix m, int pivot_cols) {
  if (pivot_cols < 0) pivot_cols = m.cols();
  RowEchelon out;
  int row = 0;
  for (int col = 0; col < pivot_cols && row < m.rows(); ++col) {
    int pick = -1;
    for (int i = row; i < m.rows(); ++i) {
      if (!m(i, col).is_zero()) {
        pick = i;
        break;
      }
    }
    if (pick < 0) continue;
    if (pick != row) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pick, j), m(row, j));
    }
    Scalar inv = Scalar(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (int j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

int rank(const Matrix& m) {
  return static_cast<int>(row_reduce(m).pivots.size());
}

Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  int n = m.rows();
  Scalar det(1);
  for (int col = 0; col < n; ++col) {
    int pick = -1;
    for (int i = col; i < n; ++i) {
      if (!m(i, col).is_zero()) {
        pick = i;
        break;
      }
    }
    if (pick < 0) return Scalar();
    if (pick != col) {
      for (int j = 0; j < n; ++j) std::swap(m(pick, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    Scalar inv = Scalar(1) / m(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      Scalar f = m(i, col) * inv;
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  int n = m.rows();
  if (n != m.cols()) throw DomainError("inverse of non-square matrix");
  auto x = solve(m, Matrix::identity(n));
  if (!x || rank(m) != n) throw DomainError("matrix is singular");
  return *x;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DomainError("matrix shape mismatch");
  int n = a.cols();
  Matrix aug(a.rows(), n + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  RowEchelon e = row_reduce(std::move(aug), n);
  int r = static_cast<int>(e.pivots.size());
  for (int i = r; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      if (!e.reduced(i, n + j).is_zero()) return std::nullopt;
    }
  }
  Matrix x(n, b.cols());
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < b.cols(); ++j) x(e.pivots[i], j) = e.reduced(i, n + j);
  }
  return x;
}

}  // namespace courant
