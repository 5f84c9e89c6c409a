#pragma once

// Exact linear algebra over Q(zeta_N): small dense matrices for group data and
// sparse vectors with an incremental echelon basis for module computations.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cherednik/scalars.hpp"

namespace cherednik {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Cyclo>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Cyclo& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Cyclo& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const;
  // Throws InvalidInput when singular.
  Matrix inverse() const;
  bool is_identity() const;
  Cyclo determinant() const;

  // Reduced row echelon form (in place); returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  // Basis of {v : A v = 0}, one column vector per entry.
  std::vector<std::vector<Cyclo>> nullspace() const;

  std::vector<Cyclo> apply(const std::vector<Cyclo>& v) const;

  // Re-express all entries in Q(zeta_M).
  Matrix embed(int order) const;

  // Deterministic serialization, usable as a map key.
  std::string key() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cyclo> data_;
};

using SparseVector = std::map<std::size_t, Cyclo>;

void axpy(SparseVector& y, const Cyclo& a, const SparseVector& x);  // y += a*x
SparseVector scaled(const SparseVector& x, const Cyclo& a);
bool is_zero(const SparseVector& v);

// Incrementally maintained echelon basis. The pivot of a vector is its lowest
// nonzero index; stored rows are normalized to leading coefficient 1.
class EchelonBasis {
 public:
  // Reduces v against the stored rows; returns the residue.
  SparseVector reduce(SparseVector v) const;
  // Adds v if independent; returns true when the span grew.
  bool insert(SparseVector v);
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  std::size_t size() const noexcept { return rows_.size(); }
  // Rows in insertion order of their pivots (sorted by pivot).
  std::vector<SparseVector> rows() const;

 private:
  std::map<std::size_t, SparseVector> rows_;
};

}  // namespace cherednik
