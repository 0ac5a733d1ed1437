// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <initializer_list>
#include <vector>

#include "treedist/errors.hpp"
#include "treedist/rational.hpp"

namespace treedist {

using Vector = std::vector<Rational>;

/* Dense matrix of exact rationals, row-major. */
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatchError("negative matrix dimension");
  }
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_)
        throw DimensionMismatchError("ragged initializer");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static Matrix constant(int rows, int cols, const Rational& value) {
    Matrix m(rows, cols);
    for (auto& x : m.data_) x = value;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatchError("matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    Rational acc, term;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < rhs.cols_; ++j) {
        acc = 0;
        for (int k = 0; k < cols_; ++k) {
          term = at(i, k) * rhs.at(k, j);
          acc += term;
        }
        out.at(i, j) = acc;
      }
    return out;
  }

  Vector operator*(const Vector& v) const {
    if (cols_ != static_cast<int>(v.size()))
      throw DimensionMismatchError("matrix-vector shape mismatch");
    Vector out(rows_);
    Rational term;
    for (int i = 0; i < rows_; ++i) {
      Rational acc = 0;
      for (int k = 0; k < cols_; ++k) {
        term = at(i, k) * v[k];
        acc += term;
      }
      out[i] = acc;
    }
    return out;
  }

  Matrix operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw DimensionMismatchError("matrix sum shape mismatch");
    Matrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw DimensionMismatchError("matrix difference shape mismatch");
    Matrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
  }

  Matrix scaled(const Rational& c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= c;
    return out;
  }

  bool operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }
  bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

private:
  int rows_, cols_;
  std::vector<Rational> data_;
};

/* Rank-one product u v^T. */
inline Matrix outer(const Vector& u, const Vector& v) {
  Matrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = u[i] * v[j];
  return m;
}

inline Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatchError("dot product shape mismatch");
  Rational acc = 0, term;
  for (size_t i = 0; i < a.size(); ++i) {
    term = a[i] * b[i];
    acc += term;
  }
  return acc;
}

inline Rational vector_sum(const Vector& v) {
  Rational acc = 0;
  for (const auto& x : v) acc += x;
  return acc;
}

inline Vector scaled(const Vector& v, const Rational& c) {
  Vector out = v;
  for (auto& x : out) x *= c;
  return out;
}

/* Eigenvalue sign counts of a symmetric matrix. */
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Inertia&) const = default;
};

}  // namespace treedist
