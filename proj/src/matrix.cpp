#include "matrix.hpp"

namespace presilt {

Matrix mat_mul(const Fp& F, const Matrix& A, const Matrix& B) {
  require_internal(A.cols == B.rows, "matrix product shape");
  Matrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int k = 0; k < A.cols; ++k) {
      u32 v = A.at(i, k);
      if (!v) continue;
      for (int j = 0; j < B.cols; ++j) {
        C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(k, j)));
      }
    }
  }
  return C;
}

Matrix mat_add(const Fp& F, const Matrix& A, const Matrix& B) {
  require_internal(A.rows == B.rows && A.cols == B.cols, "matrix sum shape");
  Matrix C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.add(C.a[i], B.a[i]);
  return C;
}

Matrix mat_sub(const Fp& F, const Matrix& A, const Matrix& B) {
  require_internal(A.rows == B.rows && A.cols == B.cols, "matrix difference shape");
  Matrix C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(C.a[i], B.a[i]);
  return C;
}

Matrix mat_scale(const Fp& F, u32 c, const Matrix& A) {
  Matrix C = A;
  for (u32& v : C.a) v = F.mul(c, v);
  return C;
}

Matrix mat_transpose(const Matrix& A) {
  Matrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

Matrix mat_hstack(const Matrix& A, const Matrix& B) {
  require_internal(A.rows == B.rows, "hstack shape");
  Matrix C(A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
  }
  return C;
}

Matrix mat_vstack(const Matrix& A, const Matrix& B) {
  require_internal(A.cols == B.cols, "vstack shape");
  Matrix C(A.rows + B.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
  return C;
}

std::vector<int> rref(const Fp& F, Matrix& M) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i) {
      if (M.at(i, c)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(r, j));
    }
    u32 inv = F.inv(M.at(r, c));
    for (int j = c; j < M.cols; ++j) M.at(r, j) = F.mul(inv, M.at(r, j));
    for (int i = 0; i < M.rows; ++i) {
      if (i == r) continue;
      u32 f = M.at(i, c);
      if (!f) continue;
      for (int j = c; j < M.cols; ++j) M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int mat_rank(const Fp& F, Matrix M) { return static_cast<int>(rref(F, M).size()); }

Matrix null_space(const Fp& F, const Matrix& A) {
  Matrix M = A;
  std::vector<int> pivots = rref(F, M);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  int nullity = A.cols - static_cast<int>(pivots.size());
  Matrix N(A.cols, nullity);
  int k = 0;
  for (int c = 0; c < A.cols; ++c) {
    if (is_pivot[c]) continue;
    N.at(c, k) = 1;
    for (size_t r = 0; r < pivots.size(); ++r) {
      // pivot row r has leading 1 at pivots[r]
      N.at(pivots[r], k) = F.neg(M.at(static_cast<int>(r), c));
    }
    ++k;
  }
  return N;
}

bool solve(const Fp& F, const Matrix& A, const std::vector<u32>& b, std::vector<u32>& x) {
  require_internal(static_cast<int>(b.size()) == A.rows, "solve rhs size");
  Matrix M(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
    M.at(i, A.cols) = b[i];
  }
  std::vector<int> pivots = rref(F, M);
  for (int c : pivots) {
    if (c == A.cols) return false;  // pivot in augmented column
  }
  x.assign(A.cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = M.at(static_cast<int>(r), A.cols);
  return true;
}

Matrix mat_inverse(const Fp& F, const Matrix& A) {
  require_internal(A.rows == A.cols, "inverse of non-square");
  int n = A.rows;
  Matrix M = mat_hstack(A, Matrix::identity(n));
  std::vector<int> pivots = rref(F, M);
  require_internal(static_cast<int>(pivots.size()) == n && (n == 0 || pivots[n - 1] == n - 1),
                   "inverse of singular matrix");
  Matrix R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) R.at(i, j) = M.at(i, n + j);
  return R;
}

Matrix column_space(const Fp& F, const Matrix& A) {
  Matrix M = A;
  std::vector<int> pivots = rref(F, M);
  Matrix C(A.rows, static_cast<int>(pivots.size()));
  for (size_t k = 0; k < pivots.size(); ++k)
    for (int i = 0; i < A.rows; ++i) C.at(i, static_cast<int>(k)) = A.at(i, pivots[k]);
  return C;
}

bool RowSpan::add(const Fp& F, std::vector<u32> v) {
  require_internal(static_cast<int>(v.size()) == width_, "RowSpan width");
  reduce(F, v);
  int lead = -1;
  for (int j = 0; j < width_; ++j) {
    if (v[j]) {
      lead = j;
      break;
    }
  }
  if (lead < 0) return false;
  u32 inv = F.inv(v[lead]);
  for (u32& x : v) x = F.mul(inv, x);
  // keep existing rows reduced against the new one
  for (size_t r = 0; r < rows_.size(); ++r) {
    u32 f = rows_[r][lead];
    if (!f) continue;
    for (int j = 0; j < width_; ++j) rows_[r][j] = F.sub(rows_[r][j], F.mul(f, v[j]));
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(lead);
  return true;
}

void RowSpan::reduce(const Fp& F, std::vector<u32>& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    u32 f = v[pivots_[r]];
    if (!f) continue;
    for (int j = 0; j < width_; ++j) v[j] = F.sub(v[j], F.mul(f, rows_[r][j]));
  }
}

bool RowSpan::contains(const Fp& F, std::vector<u32> v) const {
  reduce(F, v);
  for (u32 x : v)
    if (x) return false;
  return true;
}

}  // namespace presilt
