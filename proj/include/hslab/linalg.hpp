#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hslab/scalar.hpp"

namespace Eigen {

// Exact scalar types only need storage and ring operations from Eigen; the
// precision-related members are never used by the exact routines below.
template <>
struct NumTraits<hslab::GaussRational> : GenericNumTraits<hslab::GaussRational> {
  using Real = hslab::GaussRational;
  using NonInteger = hslab::GaussRational;
  using Nested = hslab::GaussRational;
  using Literal = hslab::GaussRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 40
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(0); }
  static Real lowest() { return Real(0); }
  static int digits10() { return 0; }
  static int digits() { return 0; }
};

template <>
struct NumTraits<hslab::Scalar> : GenericNumTraits<hslab::Scalar> {
  using Real = hslab::Scalar;
  using NonInteger = hslab::Scalar;
  using Nested = hslab::Scalar;
  using Literal = hslab::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 40,
    MulCost = 80
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static Real highest() { return Real(0); }
  static Real lowest() { return Real(0); }
  static int digits10() { return 0; }
  static int digits() { return 0; }
};

}  // namespace Eigen

namespace hslab {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using GMat = Mat<GaussRational>;
using GVec = Vec<GaussRational>;
using SMat = Mat<Scalar>;

/// Reduced row echelon form over an exact field; returns pivot columns.
template <class T>
std::vector<int> rref(Mat<T>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    m.row(p).swap(m.row(row));
    T inv = T(1) / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      T f = m(r, col);
      for (int c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
T determinant(Mat<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  T det(1);
  const int n = static_cast<int>(m.rows());
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int r = col; r < n; ++r)
      if (!m(r, col).is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return T(0);
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    T inv = T(1) / m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      T f = m(r, col) * inv;
      for (int c = col; c < n; ++c)
        if (!m(col, c).is_zero()) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// Throws std::domain_error if singular.
/// a·b skipping zero entries; exact entries are mostly zero here.
template <class T>
Mat<T> sparse_product(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("sparse_product: size mismatch");
  Mat<T> out = Mat<T>::Zero(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class T>
Mat<T> inverse(const Mat<T>& m) {
  const int n = static_cast<int>(m.rows());
  Mat<T> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<T>::Identity(n, n);
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv.back() >= n) throw std::domain_error("inverse: singular matrix");
  return aug.rightCols(n);
}

template <class T>
int rank(Mat<T> m) {
  return static_cast<int>(rref(m).size());
}

/// Some solution of A x = b, or nullopt if inconsistent.
template <class T>
std::optional<Vec<T>> solve(const Mat<T>& a, const Vec<T>& b) {
  Mat<T> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vec<T> x = Vec<T>::Zero(a.cols());
  for (size_t r = 0; r < piv.size(); ++r) x(piv[r]) = aug(static_cast<int>(r), a.cols());
  return x;
}

/// Basis of the null space of A (columns).
template <class T>
Mat<T> null_space(Mat<T> a) {
  auto piv = rref(a);
  std::vector<int> free_cols;
  size_t k = 0;
  for (int c = 0; c < a.cols(); ++c) {
    if (k < piv.size() && piv[k] == c) {
      ++k;
    } else {
      free_cols.push_back(c);
    }
  }
  Mat<T> basis = Mat<T>::Zero(a.cols(), static_cast<int>(free_cols.size()));
  for (size_t f = 0; f < free_cols.size(); ++f) {
    basis(free_cols[f], static_cast<int>(f)) = T(1);
    for (size_t r = 0; r < piv.size(); ++r) basis(piv[r], static_cast<int>(f)) = -a(static_cast<int>(r), free_cols[f]);
  }
  return basis;
}

inline Eigen::MatrixXcd to_complex(const GMat& m) {
  return m.unaryExpr([](const GaussRational& q) { return q.to_complex(); });
}

inline Eigen::MatrixXcd to_complex(const SMat& m) {
  return m.unaryExpr([](const Scalar& s) { return s.to_complex(); });
}

inline GMat conj(const GMat& m) {
  return m.unaryExpr([](const GaussRational& q) { return q.conj(); });
}

}  // namespace hslab
