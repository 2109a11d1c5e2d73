#pragma once
#include <vector>

#include "ratfun.hpp"

namespace sfc {

inline ScalarK exact_div(const ScalarK& a, const ScalarK& b) { return a / b; }
inline RatFunK exact_div(const RatFunK& a, const RatFunK& b) { return a / b; }
inline PolyK exact_div(const PolyK& a, const PolyK& b) {
  auto q = PolyK::try_divide(a, b);
  if (!q) throw Error("inexact polynomial division");
  return *q;
}
inline ScalarK inverse_of(const ScalarK& a) { return a.inverse(); }
inline RatFunK inverse_of(const RatFunK& a) { return a.inverse(); }

template <class R>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, R(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = R(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  R& at(int i, int j) { return a_[i * cols_ + j]; }
  const R& at(int i, int j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimMismatch("matrix product shape");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_, a.cols_);
    for (int i = 0; i < (int)a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_, a.cols_);
    for (int i = 0; i < (int)a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
  }
  friend Matrix operator*(const R& s, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.a_) x = s * x;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  bool is_zero() const {
    for (auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_symmetric() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (!(at(i, j) == at(j, i))) return false;
    return true;
  }

  Matrix submatrix(const std::vector<int>& rws, const std::vector<int>& cls) const {
    Matrix m(rws.size(), cls.size());
    for (int i = 0; i < (int)rws.size(); ++i)
      for (int j = 0; j < (int)cls.size(); ++j) m.at(i, j) = at(rws[i], cls[j]);
    return m;
  }

 private:
  int rows_, cols_;
  std::vector<R> a_;
};

// Fraction-free Bareiss determinant; works over any exact-division domain.
template <class R>
R det(Matrix<R> m) {
  if (m.rows() != m.cols()) throw DimMismatch("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return R(1);
  R prev = R(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k).is_zero()) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m.at(i, k).is_zero()) {
          p = i;
          break;
        }
      if (p < 0) return R(0);
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = exact_div(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
    prev = m.at(k, k);
  }
  R d = m.at(n - 1, n - 1);
  return sign < 0 ? R(0) - d : d;
}

// In-place reduced row echelon form over a field; returns pivot columns.
template <class R>
std::vector<int> rref(Matrix<R>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(p, j));
    R inv = inverse_of(m.at(r, c));
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = inv * m.at(r, j);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      R f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class R>
int rank(Matrix<R> m) {
  return (int)rref(m).size();
}

// Kernel basis as rows; columns indexed like the input's columns. The basis
// is the standard free-variable parameterization of the RREF, so each row has
// a 1 in "its" free column and the pivot columns carry the negated couplings.
template <class R>
std::vector<std::vector<R>> kernel_basis(Matrix<R> m) {
  int n = m.cols();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<R>> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<R> v(n, R(0));
    v[c] = R(1);
    for (int r = 0; r < (int)pivots.size(); ++r) v[pivots[r]] = R(0) - m.at(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class R>
Matrix<R> inverse(const Matrix<R>& m) {
  if (m.rows() != m.cols()) throw DimMismatch("inverse of non-square matrix");
  int n = m.rows();
  Matrix<R> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = R(1);
  }
  auto pivots = rref(aug);
  if ((int)pivots.size() != n) throw Error("singular matrix");
  Matrix<R> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

// Definiteness of an exact symmetric matrix by Sylvester leading minors.
enum class Definiteness { PositiveDefinite, NegativeDefinite, Indefinite, Degenerate };

inline Definiteness classify_symmetric(const Matrix<ScalarK>& b) {
  int n = b.rows();
  std::vector<int> signs(n);
  for (int k = 1; k <= n; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    ScalarK mk = det(b.submatrix(idx, idx));
    signs[k - 1] = mk.is_zero() ? 0 : mk.sign();
  }
  bool pos = true, neg = true;
  for (int k = 1; k <= n; ++k) {
    if (signs[k - 1] != 1) pos = false;
    if (signs[k - 1] != (k % 2 ? -1 : 1)) neg = false;
  }
  if (pos) return Definiteness::PositiveDefinite;
  if (neg) return Definiteness::NegativeDefinite;
  ScalarK d = det(b);
  return d.is_zero() ? Definiteness::Degenerate : Definiteness::Indefinite;
}

}  // namespace sfc
