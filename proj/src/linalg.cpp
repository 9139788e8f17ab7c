#include "holant/linalg.hpp"

namespace holant {

Matrix rref(Matrix m, std::vector<std::size_t>* pivots) {
  const std::size_t rows = m.size();
  if (rows == 0) return m;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Scalar inv = m[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (!m[r][k].is_zero()) m[i][k] -= f * m[r][k];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

std::vector<std::vector<Scalar>> kernel(const Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> piv;
  Matrix e = rref(m, &piv);
  std::vector<bool> is_piv(ncols, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> v(ncols, Scalar(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -e[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> solve_unique(const Matrix& m, const std::vector<Scalar>& b) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  Matrix aug = m;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  std::vector<std::size_t> piv;
  Matrix e = rref(std::move(aug), &piv);
  // a free column, or a pivot in the rhs column
  if (piv.size() != cols || (cols && piv.back() >= cols)) return std::nullopt;
  std::vector<Scalar> x(cols);
  for (std::size_t i = 0; i < cols; ++i) x[piv[i]] = e[i][cols];
  return x;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

}  // namespace holant
