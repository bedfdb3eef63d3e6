#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coalbase/finstruct.hpp"
#include "coalbase/scalar.hpp"

namespace coalbase {

using qvec = std::vector<scalar>;

struct matrix {
  int rows = 0, cols = 0;
  scalar_domain dom = scalar_domain::rational;
  std::vector<scalar> a;

  static matrix zero(scalar_domain d, int r, int c) {
    matrix m;
    m.rows = r;
    m.cols = c;
    m.dom = d;
    m.a.assign(static_cast<std::size_t>(r) * c, scalar::zero(d));
    return m;
  }

  static matrix identity(scalar_domain d, int n) {
    matrix m = zero(d, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = scalar::one(d);
    return m;
  }

  static matrix from_columns(scalar_domain d, const std::vector<qvec>& cols) {
    if (cols.empty()) return zero(d, 0, 0);
    matrix m = zero(d, static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j) {
      if (static_cast<int>(cols[j].size()) != m.rows)
        throw shape_error("ragged column list");
      for (int i = 0; i < m.rows; ++i) m.at(i, j) = cols[j][static_cast<std::size_t>(i)];
    }
    return m;
  }

  scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const scalar& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  qvec column(int j) const {
    qvec v;
    v.reserve(rows);
    for (int i = 0; i < rows; ++i) v.push_back(at(i, j));
    return v;
  }
  qvec row(int i) const {
    qvec v;
    v.reserve(cols);
    for (int j = 0; j < cols; ++j) v.push_back(at(i, j));
    return v;
  }

  bool operator==(const matrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline matrix mat_mul(const matrix& x, const matrix& y) {
  if (x.cols != y.rows) throw shape_error("matrix dimension mismatch");
  matrix out = matrix::zero(x.dom, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j)
        out.at(i, j) = add(out.at(i, j), mul(x.at(i, k), y.at(k, j)));
    }
  return out;
}

inline qvec mat_vec(const matrix& m, const qvec& v) {
  if (m.cols != static_cast<int>(v.size())) throw shape_error("matrix/vector mismatch");
  qvec out(static_cast<std::size_t>(m.rows), scalar::zero(m.dom));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      out[static_cast<std::size_t>(i)] =
          add(out[static_cast<std::size_t>(i)], mul(m.at(i, j), v[static_cast<std::size_t>(j)]));
  return out;
}

inline qvec row_vec(const qvec& r, const matrix& m) {
  if (m.rows != static_cast<int>(r.size())) throw shape_error("row/matrix mismatch");
  qvec out(static_cast<std::size_t>(m.cols), scalar::zero(m.dom));
  for (int j = 0; j < m.cols; ++j)
    for (int i = 0; i < m.rows; ++i)
      out[static_cast<std::size_t>(j)] =
          add(out[static_cast<std::size_t>(j)], mul(r[static_cast<std::size_t>(i)], m.at(i, j)));
  return out;
}

inline scalar dot(const qvec& x, const qvec& y) {
  if (x.size() != y.size()) throw shape_error("vector length mismatch");
  if (x.empty()) throw shape_error("empty dot product needs a domain");
  scalar s = scalar::zero(x[0].domain());
  for (std::size_t i = 0; i < x.size(); ++i) s = add(s, mul(x[i], y[i]));
  return s;
}

inline qvec vec_add(const qvec& x, const qvec& y) {
  if (x.size() != y.size()) throw shape_error("vector length mismatch");
  qvec out = x;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = add(x[i], y[i]);
  return out;
}

inline qvec vec_scale(const scalar& s, const qvec& x) {
  qvec out = x;
  for (auto& v : out) v = mul(s, v);
  return out;
}

inline matrix kron(const matrix& x, const matrix& y) {
  matrix out = matrix::zero(x.dom, x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      if (x.at(i, j).is_zero()) continue;
      for (int p = 0; p < y.rows; ++p)
        for (int q = 0; q < y.cols; ++q)
          out.at(i * y.rows + p, j * y.cols + q) = mul(x.at(i, j), y.at(p, q));
    }
  return out;
}

inline qvec kron_vec(const qvec& x, const qvec& y) {
  qvec out;
  out.reserve(x.size() * y.size());
  for (const auto& xv : x)
    for (const auto& yv : y) out.push_back(mul(xv, yv));
  return out;
}

struct singular_witness {
  int column = -1;        // first column dependent on its predecessors
  qvec combination;       // coefficients on columns 0..column-1
  std::string describe(const matrix& m) const {
    std::string s = "column " + std::to_string(column) + " = ";
    bool first = true;
    for (int j = 0; j < static_cast<int>(combination.size()); ++j) {
      if (combination[static_cast<std::size_t>(j)].is_zero()) continue;
      if (!first) s += " + ";
      s += combination[static_cast<std::size_t>(j)].str() + "*col" + std::to_string(j);
      first = false;
    }
    if (first) s += "0";
    (void)m;
    return s;
  }
};

// Reduced row echelon form of [m | rhs...], exact over a field.
// Returns pivot columns; m and tail are transformed in place.
inline std::vector<int> rref(matrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    scalar piv_inv = inv(m.at(r, c));
    for (int j = 0; j < m.cols; ++j) m.at(r, j) = mul(piv_inv, m.at(r, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      scalar f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = sub(m.at(i, j), mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(matrix m) { return static_cast<int>(rref(m).size()); }

// inverse of a square matrix, or a witness naming the first dependent column
inline std::optional<matrix> invert(const matrix& m, singular_witness* w = nullptr) {
  if (m.rows != m.cols) throw shape_error("inverse needs a square matrix");
  int n = m.rows;
  matrix aug = matrix::zero(m.dom, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = scalar::one(m.dom);
  }
  auto pivots = rref(aug);
  int r = 0;
  for (int c = 0; c < n; ++c) {
    if (r < static_cast<int>(pivots.size()) && pivots[static_cast<std::size_t>(r)] == c) {
      ++r;
      continue;
    }
    if (w) {
      // in rref, a non-pivot column's entries over the pivot rows are exactly
      // its coordinates in the preceding pivot columns
      w->column = c;
      w->combination.assign(static_cast<std::size_t>(c), scalar::zero(m.dom));
      for (int k = 0; k < r; ++k)
        w->combination[static_cast<std::size_t>(pivots[static_cast<std::size_t>(k)])] =
            aug.at(k, c);
    }
    return std::nullopt;
  }
  matrix out = matrix::zero(m.dom, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

// unique solution of A x = b when it exists (exact; nullopt when the system
// is inconsistent or underdetermined)
inline std::optional<qvec> solve_unique(const matrix& A, const qvec& b) {
  if (static_cast<int>(b.size()) != A.rows) throw shape_error("solve: rhs size mismatch");
  matrix aug = matrix::zero(A.dom, A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[static_cast<std::size_t>(i)];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;  // inconsistent
  if (static_cast<int>(pivots.size()) != A.cols) return std::nullopt;   // free variables
  qvec x(static_cast<std::size_t>(A.cols), scalar::zero(A.dom));
  for (int k = 0; k < static_cast<int>(pivots.size()); ++k)
    x[static_cast<std::size_t>(pivots[static_cast<std::size_t>(k)])] = aug.at(k, A.cols);
  return x;
}

}  // namespace coalbase
