#pragma once

#include "field.hpp"

namespace presilt {

// Dense row-major matrix over GF(p).
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<u32> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  u32& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  u32 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  bool is_zero() const {
    for (u32 v : a)
      if (v) return false;
    return true;
  }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Matrix mat_mul(const Fp& F, const Matrix& A, const Matrix& B);
Matrix mat_add(const Fp& F, const Matrix& A, const Matrix& B);
Matrix mat_sub(const Fp& F, const Matrix& A, const Matrix& B);
Matrix mat_scale(const Fp& F, u32 c, const Matrix& A);
Matrix mat_transpose(const Matrix& A);
Matrix mat_hstack(const Matrix& A, const Matrix& B);
Matrix mat_vstack(const Matrix& A, const Matrix& B);

// Row-reduce in place; returns pivot column per pivot row.
std::vector<int> rref(const Fp& F, Matrix& M);
int mat_rank(const Fp& F, Matrix M);

// Basis of {x : A x = 0}, returned as columns of a (cols x nullity) matrix.
Matrix null_space(const Fp& F, const Matrix& A);

// Solve A x = b; returns false if inconsistent.
bool solve(const Fp& F, const Matrix& A, const std::vector<u32>& b, std::vector<u32>& x);

// Inverse of a square matrix; fails internally if singular.
Matrix mat_inverse(const Fp& F, const Matrix& A);

// Column-space basis as columns of a (rows x rank) matrix.
Matrix column_space(const Fp& F, const Matrix& A);

// Incremental row-span under rref; used to build bases one vector at a time.
struct RowSpan {
  explicit RowSpan(int width) : width_(width) {}
  // Returns true (and absorbs the vector) if v was independent of the span.
  bool add(const Fp& F, std::vector<u32> v);
  bool contains(const Fp& F, std::vector<u32> v) const;
  // Reduces v modulo the span in place.
  void reduce(const Fp& F, std::vector<u32>& v) const;
  int dim() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }
  const std::vector<std::vector<u32>>& rows() const { return rows_; }

private:
  int width_;
  std::vector<std::vector<u32>> rows_;  // reduced rows
  std::vector<int> pivots_;             // pivot column of each row
};

}  // namespace presilt
