#pragma once

// Exact dense linear algebra over Scalar.

#include <optional>
#include <vector>

#include "holant/scalar.hpp"

namespace holant {

using Matrix = std::vector<std::vector<Scalar>>;

/// Reduced row echelon form; pivot columns are appended to `pivots`.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);

/// Basis of {x : m x = 0}; one vector per free column, free entry set to 1.
std::vector<std::vector<Scalar>> kernel(const Matrix& m, std::size_t ncols);

/// The unique solution of m x = b, or nullopt when there is none or it is
/// not unique.
std::optional<std::vector<Scalar>> solve_unique(const Matrix& m, const std::vector<Scalar>& b);

std::size_t rank(const Matrix& m);

}  // namespace holant
