#include "cherednik/linalg.hpp"

#include "cherednik/errors.hpp"

namespace cherednik {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyclo(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Cyclo>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidInput("matrix dimension mismatch in product");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Cyclo& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Cyclo& b = rhs(k, j);
        if (!b.is_zero()) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInput("matrix dimension mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t p = row;
    while (p < rows_ && (*this)(p, col).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(row, j));
    const Cyclo inv = (*this)(row, col).inverse();
    for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || (*this)(i, col).is_zero()) continue;
      const Cyclo f = (*this)(i, col);
      for (std::size_t j = col; j < cols_; ++j) (*this)(i, j) -= f * (*this)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<Cyclo>> Matrix::nullspace() const {
  Matrix r = *this;
  const auto pivots = r.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Cyclo>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Cyclo> v(cols_);
    v[free] = Cyclo(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = rows_;
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = Cyclo(1);
  }
  const auto pivots = aug.rref();
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw InvalidInput("matrix is not invertible");
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != Cyclo(i == j ? 1 : 0)) return false;
  return true;
}

Cyclo Matrix::determinant() const {
  if (rows_ != cols_) throw InvalidInput("determinant of a non-square matrix");
  Matrix a = *this;
  Cyclo det(1);
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t p = col;
    while (p < rows_ && a(p, col).is_zero()) ++p;
    if (p == rows_) return Cyclo(0);
    if (p != col) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a(p, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const Cyclo inv = a(col, col).inverse();
    for (std::size_t i = col + 1; i < rows_; ++i) {
      if (a(i, col).is_zero()) continue;
      const Cyclo f = a(i, col) * inv;
      for (std::size_t j = col; j < cols_; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

std::vector<Cyclo> Matrix::apply(const std::vector<Cyclo>& v) const {
  if (v.size() != cols_) throw InvalidInput("matrix-vector dimension mismatch");
  std::vector<Cyclo> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix Matrix::embed(int order) const {
  Matrix out = *this;
  for (auto& x : out.data_) x = x.embed(order);
  return out;
}

std::string Matrix::key() const {
  std::string out;
  for (const auto& x : data_) {
    out += x.to_string();
    out += ';';
  }
  return out;
}

void axpy(SparseVector& y, const Cyclo& a, const SparseVector& x) {
  if (a.is_zero()) return;
  for (const auto& [i, v] : x) {
    auto it = y.find(i);
    if (it == y.end()) {
      y.emplace(i, a * v);
    } else {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

SparseVector scaled(const SparseVector& x, const Cyclo& a) {
  SparseVector out;
  if (a.is_zero()) return out;
  for (const auto& [i, v] : x) out.emplace(i, v * a);
  return out;
}

bool is_zero(const SparseVector& v) {
  for (const auto& [i, c] : v)
    if (!c.is_zero()) return false;
  return true;
}

SparseVector EchelonBasis::reduce(SparseVector v) const {
  for (auto it = v.begin(); it != v.end();) {
    if (it->second.is_zero()) {
      it = v.erase(it);
      continue;
    }
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t pivot = it->first;
    const Cyclo factor = -it->second;
    axpy(v, factor, row->second);
    it = v.upper_bound(pivot);
  }
  return v;
}

bool EchelonBasis::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const Cyclo inv = v.begin()->second.inverse();
  for (auto& [i, c] : v) c *= inv;
  const std::size_t pivot = v.begin()->first;
  rows_.emplace(pivot, std::move(v));
  return true;
}

std::vector<SparseVector> EchelonBasis::rows() const {
  std::vector<SparseVector> out;
  out.reserve(rows_.size());
  for (const auto& [p, r] : rows_) out.push_back(r);
  return out;
}

}  // namespace cherednik
