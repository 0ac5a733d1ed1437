// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "treedist/errors.hpp"
#include "treedist/graph.hpp"
#include "treedist/matrix.hpp"
#include "treedist/rational.hpp"

namespace treedist {
namespace detail {

/* Fraction-free elimination determinant of an integer matrix, in place.
 * Every intermediate entry is a minor of the input, so divisions are exact. */
inline Integer bareiss_determinant(std::vector<Integer>& a, int n) {
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1, t1, t2;
  for (int k = 0; k + 1 < n; ++k) {
    int pivot = -1;
    for (int r = k; r < n; ++r)
      if (a[static_cast<size_t>(r) * n + k] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != k) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(pivot) * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        t1 = a[static_cast<size_t>(k) * n + k] * a[static_cast<size_t>(i) * n + j];
        t2 = a[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(k) * n + j];
        t1 -= t2;
        mpz_divexact(a[static_cast<size_t>(i) * n + j].get_mpz_t(), t1.get_mpz_t(),
                     prev.get_mpz_t());
      }
      a[static_cast<size_t>(i) * n + k] = 0;
    }
    prev = a[static_cast<size_t>(k) * n + k];
  }
  Integer det = a[static_cast<size_t>(n) * n - 1];
  return sign > 0 ? det : Integer(-det);
}

/* Clears denominators row by row.  det(m) = bareiss(rows) / row_factor. */
inline std::vector<Integer> clear_rows(const Matrix& m, Integer& row_factor) {
  const int n = m.rows();
  std::vector<Integer> a(static_cast<size_t>(n) * m.cols());
  row_factor = 1;
  Integer lcm, q;
  for (int i = 0; i < n; ++i) {
    lcm = 1;
    for (int j = 0; j < m.cols(); ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
    for (int j = 0; j < m.cols(); ++j) {
      mpz_divexact(q.get_mpz_t(), lcm.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
      a[static_cast<size_t>(i) * m.cols() + j] = m.at(i, j).get_num() * q;
    }
    row_factor *= lcm;
  }
  return a;
}

/* One common denominator for the whole matrix: m = result / uniform_factor. */
inline std::vector<Integer> clear_uniform(const Matrix& m, Integer& uniform_factor) {
  uniform_factor = 1;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      mpz_lcm(uniform_factor.get_mpz_t(), uniform_factor.get_mpz_t(),
              m.at(i, j).get_den().get_mpz_t());
  std::vector<Integer> a(static_cast<size_t>(m.rows()) * m.cols());
  Integer q;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      mpz_divexact(q.get_mpz_t(), uniform_factor.get_mpz_t(),
                   m.at(i, j).get_den().get_mpz_t());
      a[static_cast<size_t>(i) * m.cols() + j] = m.at(i, j).get_num() * q;
    }
  return a;
}

/* Characteristic polynomial coefficients of an integer matrix, highest power
 * first: p(x) = x^n + c[1] x^(n-1) + ... + c[n].  The trace divisions are
 * exact over the integers. */
inline std::vector<Integer> char_poly(const std::vector<Integer>& a, int n) {
  std::vector<Integer> coeff(static_cast<size_t>(n) + 1);
  coeff[0] = 1;
  if (n == 0) return coeff;
  std::vector<Integer> m(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1;
  std::vector<Integer> next(static_cast<size_t>(n) * n);
  Integer trace, term;
  for (int k = 1; k <= n; ++k) {
    // next = a * m
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Integer& cell = next[static_cast<size_t>(i) * n + j];
        cell = 0;
        for (int l = 0; l < n; ++l) {
          term = a[static_cast<size_t>(i) * n + l] * m[static_cast<size_t>(l) * n + j];
          cell += term;
        }
      }
    trace = 0;
    for (int i = 0; i < n; ++i) trace += next[static_cast<size_t>(i) * n + i];
    mpz_divexact_ui(coeff[k].get_mpz_t(), trace.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_neg(coeff[k].get_mpz_t(), coeff[k].get_mpz_t());
    if (k < n) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          m[static_cast<size_t>(i) * n + j] = next[static_cast<size_t>(i) * n + j];
          if (i == j) m[static_cast<size_t>(i) * n + j] += coeff[k];
        }
    }
  }
  return coeff;
}

}  // namespace detail

/* Exact determinant via fraction-free elimination on cleared rows.
 * The 0x0 determinant is 1. */
inline Rational determinant(const Matrix& m) {
  if (!m.is_square()) throw NotSquareError("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  Integer row_factor;
  std::vector<Integer> a = detail::clear_rows(m, row_factor);
  Integer det = detail::bareiss_determinant(a, m.rows());
  Rational out(det, row_factor);
  out.canonicalize();
  return out;
}

/* Sum of all signed cofactors.  Since the all-ones matrix J has rank one,
 * det(m + J) = det(m) + cofactor_sum(m); two determinants suffice.
 * For a 1x1 matrix the (empty) cofactor is 1. */
inline Rational cofactor_sum(const Matrix& m) {
  if (!m.is_square()) throw NotSquareError("cofactor sum of a non-square matrix");
  if (m.rows() == 0) throw PreconditionError("cofactor sum needs dimension >= 1");
  Matrix shifted = m + Matrix::constant(m.rows(), m.cols(), 1);
  return determinant(shifted) - determinant(m);
}

/* Solves m x = rhs exactly by Gaussian elimination over the rationals. */
inline Vector solve(const Matrix& m, const Vector& rhs) {
  if (!m.is_square()) throw DimensionMismatchError("solve needs a square matrix");
  const int n = m.rows();
  if (static_cast<int>(rhs.size()) != n)
    throw DimensionMismatchError("right-hand side size does not match matrix");
  Matrix a = m;
  Vector b = rhs;
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int r = k; r < n; ++r)
      if (a.at(r, k) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw SingularError("singular system");
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    Rational factor, term;
    for (int i = k + 1; i < n; ++i) {
      if (a.at(i, k) == 0) continue;
      factor = a.at(i, k) / a.at(k, k);
      a.at(i, k) = 0;
      for (int j = k + 1; j < n; ++j) {
        term = factor * a.at(k, j);
        a.at(i, j) -= term;
      }
      term = factor * b[k];
      b[i] -= term;
    }
  }
  Vector x(n);
  Rational term;
  for (int i = n - 1; i >= 0; --i) {
    Rational acc = b[i];
    for (int j = i + 1; j < n; ++j) {
      term = a.at(i, j) * x[j];
      acc -= term;
    }
    x[i] = acc / a.at(i, i);
  }
  return x;
}

/* Eigenvalue sign counts of a symmetric rational matrix, computed exactly:
 * scale to an integer matrix (eigenvalue signs are unchanged), take the
 * characteristic polynomial, and count sign variations.  All roots are real,
 * so the variation count is exact, and trailing zero coefficients count the
 * zero eigenvalues. */
inline Inertia inertia(const Matrix& m) {
  if (!m.is_square()) throw NotSquareError("inertia of a non-square matrix");
  if (!m.is_symmetric()) throw NotSymmetricError("inertia needs a symmetric matrix");
  const int n = m.rows();
  Inertia result;
  if (n == 0) return result;
  Integer uniform;
  std::vector<Integer> a = detail::clear_uniform(m, uniform);
  std::vector<Integer> coeff = detail::char_poly(a, n);
  int zero_tail = 0;
  while (zero_tail < n && coeff[static_cast<size_t>(n) - zero_tail] == 0) ++zero_tail;
  result.zero = zero_tail;
  int variations = 0, last_sign = 1;  // leading coefficient is 1
  for (int k = 1; k <= n - zero_tail; ++k) {
    int s = sgn(coeff[k]);
    if (s == 0) continue;
    if (s != last_sign) ++variations;
    last_sign = s;
  }
  result.positive = variations;
  result.negative = n - result.positive - result.zero;
  return result;
}

/* Vertex-by-edge incidence matrix: +1 at the head, -1 at the tail. */
template <class Graph>
inline Matrix incidence_matrix(const Graph& g) {
  Matrix b(g.vertex_count(), g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    if (edge.tail == edge.head) continue;  // loops give zero columns
    b.at(edge.head, e) = 1;
    b.at(edge.tail, e) = -1;
  }
  return b;
}

/* Weighted Laplacian B diag(1/length) B^T. */
template <class Graph>
inline Matrix laplacian(const Graph& g) {
  const int n = g.vertex_count();
  Matrix l(n, n);
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    if (edge.tail == edge.head) continue;
    Rational w = 1 / edge.length;
    l.at(edge.tail, edge.tail) += w;
    l.at(edge.head, edge.head) += w;
    l.at(edge.tail, edge.head) -= w;
    l.at(edge.head, edge.tail) -= w;
  }
  return l;
}

/* Laplacian with the rows and columns of the vertices in s removed,
 * i.e. indexed by the complement of s in original vertex order. */
inline Matrix laplacian_minor(const Tree& t, const VertexSubset& s) {
  if (s.empty()) throw EmptySubsetError("laplacian minor needs a nonempty subset");
  Matrix l = laplacian(t);
  std::vector<int> keep;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (!s.contains(v)) keep.push_back(v);
  Matrix out(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i)
    for (size_t j = 0; j < keep.size(); ++j)
      out.at(static_cast<int>(i), static_cast<int>(j)) = l.at(keep[i], keep[j]);
  return out;
}

/* Same, for a multigraph with an explicit list of removed vertices. */
inline Matrix laplacian_minor(const Multigraph& g, const std::vector<int>& removed) {
  Matrix l = laplacian(g);
  std::vector<char> drop(g.vertex_count(), 0);
  for (int v : removed) {
    if (v < 0 || v >= g.vertex_count())
      throw InvalidVertexError("vertex index out of range: " + std::to_string(v));
    drop[v] = 1;
  }
  std::vector<int> keep;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!drop[v]) keep.push_back(v);
  Matrix out(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i)
    for (size_t j = 0; j < keep.size(); ++j)
      out.at(static_cast<int>(i), static_cast<int>(j)) = l.at(keep[i], keep[j]);
  return out;
}

}  // namespace treedist
