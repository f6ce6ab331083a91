#include "fatpoints/matrix.hpp"

#include <algorithm>

namespace fatpoints {

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

DenseMatrix DenseMatrix::stacked(const DenseMatrix& other) const {
  if (other.cols() != cols_) throw Error("stacked: column count mismatch");
  DenseMatrix s(field_, rows_ + other.rows(), cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s.set(i, j, at(i, j));
  for (std::size_t i = 0; i < other.rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      s.set(rows_ + i, j, other.at(i, j));
  return s;
}

namespace {

// Echelonize in place; returns pivot column per pivot row.  When `reduce` is
// set, clears above the pivots too and scales them to 1 (RREF).
std::vector<std::size_t> echelon(DenseMatrix& m, bool reduce) {
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = c; j < m.cols(); ++j) {
        std::uint64_t tmp = m.at(r, j);
        m.set(r, j, m.at(piv, j));
        m.set(piv, j, tmp);
      }
    std::uint64_t inv_p = f.inv(m.at(r, c));
    for (std::size_t i = reduce ? 0 : r + 1; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      std::uint64_t factor = f.mul(m.at(i, c), inv_p);
      for (std::size_t j = c; j < m.cols(); ++j)
        m.set(i, j, f.sub(m.at(i, j), f.mul(factor, m.at(r, j))));
    }
    if (reduce && inv_p != 1)
      for (std::size_t j = c; j < m.cols(); ++j)
        m.set(r, j, f.mul(m.at(r, j), inv_p));
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

}  // namespace

std::size_t rank(const DenseMatrix& m) {
  DenseMatrix work = m;
  return echelon(work, /*reduce=*/false).size();
}

std::vector<std::vector<std::uint64_t>> kernel_basis(const DenseMatrix& m) {
  const PrimeField& f = m.field();
  DenseMatrix work = m;
  std::vector<std::size_t> pivots = echelon(work, /*reduce=*/true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<std::uint64_t> v(m.cols(), 0);
    v[free_c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = f.neg(work.at(i, free_c));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const IntMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);

  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        // Bareiss step: the division by the previous pivot is exact.
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace fatpoints
