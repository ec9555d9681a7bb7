#include "blc/linalg.hpp"

#include "blc/errors.hpp"

namespace blc {

Matrix zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<Rational>(cols, Rational(0)));
}

Matrix identity_matrix(std::size_t n) {
  Matrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
  return m;
}

Matrix from_int(const std::vector<std::vector<long long>>& m) {
  Matrix out;
  for (const auto& row : m) {
    std::vector<Rational> r;
    for (auto v : row) r.emplace_back(static_cast<std::int64_t>(v));
    out.push_back(std::move(r));
  }
  return out;
}

Matrix rref(Matrix m, std::size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw PreconditionError("matrix row has the wrong length");
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    Rational inv = m[r][c].reciprocal();
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

std::size_t rank(const Matrix& m, std::size_t cols) { return rref(m, cols).size(); }

Matrix nullspace(const Matrix& m, std::size_t cols) {
  Matrix r = rref(m, cols);
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  for (const auto& row : r) {
    std::size_t c = 0;
    while (row[c].is_zero()) ++c;
    pivot_col.push_back(c);
    is_pivot[c] = true;
  }
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = Rational(1);
    for (std::size_t i = 0; i < r.size(); ++i) v[pivot_col[i]] = -r[i][free];
    basis.push_back(std::move(v));
  }
  return rref(std::move(basis), cols);
}

Matrix mul_transpose(const Matrix& a, const Matrix& b) {
  Matrix out = zero_matrix(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i].size() != b[j].size()) throw PreconditionError("matrix shapes do not match");
      Rational s(0);
      for (std::size_t k = 0; k < a[i].size(); ++k) s += a[i][k] * b[j][k];
      out[i][j] = s;
    }
  return out;
}

Matrix span(const Matrix& rows, std::size_t cols) { return rref(rows, cols); }

Matrix subspace_sum(const Matrix& a, const Matrix& b, std::size_t cols) {
  Matrix m = a;
  m.insert(m.end(), b.begin(), b.end());
  return rref(std::move(m), cols);
}

Matrix subspace_intersection(const Matrix& a, const Matrix& b, std::size_t cols) {
  // U and V are the null spaces of their annihilators; stack those.
  Matrix ann = nullspace(a, cols);
  Matrix bn = nullspace(b, cols);
  ann.insert(ann.end(), bn.begin(), bn.end());
  return nullspace(ann, cols);
}

std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  Matrix m = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw PreconditionError("solve needs a square matrix");
    m[i].push_back(b[i]);
  }
  Matrix r = rref(std::move(m), n + 1);
  if (r.size() != n) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i][i] != Rational(1)) return std::nullopt;  // pivot in the augmented column
    x[i] = r[i][n];
  }
  return x;
}

}  // namespace blc
