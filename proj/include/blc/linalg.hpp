#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "blc/rational.hpp"

namespace blc {

/// Dense rational matrix, row-major. A subspace of Q^n is stored as the rows
/// of its reduced row echelon basis.
using Matrix = std::vector<std::vector<Rational>>;

Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix identity_matrix(std::size_t n);
Matrix from_int(const std::vector<std::vector<long long>>& m);

/// Reduced row echelon form with zero rows dropped.
Matrix rref(Matrix m, std::size_t cols);
std::size_t rank(const Matrix& m, std::size_t cols);

/// Basis (RREF) of {x in Q^cols : m x = 0}.
Matrix nullspace(const Matrix& m, std::size_t cols);

/// a * b^T  (rows of a against rows of b).
Matrix mul_transpose(const Matrix& a, const Matrix& b);

/// Canonical basis of the row space.
Matrix span(const Matrix& rows, std::size_t cols);
Matrix subspace_sum(const Matrix& a, const Matrix& b, std::size_t cols);
Matrix subspace_intersection(const Matrix& a, const Matrix& b, std::size_t cols);

/// Unique solution of the square system a x = b, if a is invertible.
std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b);

}  // namespace blc
