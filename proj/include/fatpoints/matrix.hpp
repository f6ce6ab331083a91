#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fatpoints/field.hpp"

namespace fatpoints {

using BigInt = boost::multiprecision::cpp_int;

// Row-major matrix over F_p.  Entries are reduced residues.
class DenseMatrix {
 public:
  DenseMatrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, std::uint64_t v) {
    a_[i * cols_ + j] = v % field_.modulus();
  }

  std::uint64_t* row(std::size_t i) { return a_.data() + i * cols_; }
  const std::uint64_t* row(std::size_t i) const {
    return a_.data() + i * cols_;
  }

  DenseMatrix transposed() const;
  // Rows of `other` appended below this matrix (column counts must agree).
  DenseMatrix stacked(const DenseMatrix& other) const;

 private:
  PrimeField field_;
  std::size_t rows_, cols_;
  std::vector<std::uint64_t> a_;
};

// Gaussian elimination with partial pivoting (first nonzero in column).
std::size_t rank(const DenseMatrix& m);

// Basis of { v : M v = 0 }, one vector per non-pivot column, built from the
// reduced row echelon form.  Size is always cols - rank.
std::vector<std::vector<std::uint64_t>> kernel_basis(const DenseMatrix& m);

// Exact integer matrix for the independent rational-arithmetic rank path.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BigInt& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, BigInt v) {
    a_[i * cols_ + j] = std::move(v);
  }

 private:
  std::size_t rows_, cols_;
  std::vector<BigInt> a_;
};

// Rank over Q via Bareiss fraction-free elimination.  No rounding anywhere;
// intended for the small instances the acceptance oracle re-verifies.
std::size_t rank(const IntMatrix& m);

}  // namespace fatpoints
