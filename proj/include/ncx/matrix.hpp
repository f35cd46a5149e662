#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace ncx {

/// Dense row-major matrix over an exact field. A map between spaces of
/// dimensions c and r is an r x c matrix acting on column vectors.
template <class F>
class Matrix {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const value_type& v) { return field_.is_zero(v); });
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!field_.equal(data_[k], o.data_[k])) return false;
    return true;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
      throw DimensionError("Matrix product: " + shape() + " times " + o.shape());
    Matrix out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const value_type& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          out(i, j) = field_.add(out(i, j), field_.mul(a, o(k, j)));
      }
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o, "sum");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.add(data_[k], o.data_[k]);
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o, "difference");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.sub(data_[k], o.data_[k]);
    return *this;
  }
  Matrix operator+(const Matrix& o) const { Matrix r = *this; r += o; return r; }
  Matrix operator-(const Matrix& o) const { Matrix r = *this; r -= o; return r; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& v : r.data_) v = field_.neg(v);
    return r;
  }
  Matrix scaled(const value_type& s) const {
    Matrix r = *this;
    for (auto& v : r.data_) v = field_.mul(v, s);
    return r;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("Matrix::block out of range");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw DimensionError("Matrix::set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }

  static Matrix hstack(const F& field, std::size_t rows, const std::vector<Matrix>& parts) {
    std::size_t cols = 0;
    for (const auto& p : parts) {
      if (p.rows() != rows) throw DimensionError("hstack: row count mismatch");
      cols += p.cols();
    }
    Matrix out(field, rows, cols);
    std::size_t c = 0;
    for (const auto& p : parts) {
      out.set_block(0, c, p);
      c += p.cols();
    }
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string("Matrix ") + what + ": " + shape() + " vs " + o.shape());
  }

  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

/// Reduced row echelon form together with its pivot columns.
template <class F>
struct Echelon {
  Matrix<F> rref;
  std::vector<std::size_t> pivots;
};

template <class F>
Echelon<F> row_reduce(Matrix<F> m) {
  const F& k = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && k.is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    auto inv = k.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = k.mul(m(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || k.is_zero(m(i, col))) continue;
      auto factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!k.is_zero(m(row, j))) m(i, j) = k.sub(m(i, j), k.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.empty()) return 0;
  // eliminate on the shorter side
  if (m.cols() > m.rows()) return row_reduce(m.transpose()).pivots.size();
  return row_reduce(m).pivots.size();
}

/// Columns form a basis of the null space.
template <class F>
Matrix<F> kernel(const Matrix<F>& m) {
  const F& k = m.field();
  auto ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::size_t nfree = m.cols() - ech.pivots.size();
  Matrix<F> basis(k, m.cols(), nfree);
  std::size_t b = 0;
  for (std::size_t fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    basis(fc, b) = k.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) basis(ech.pivots[r], b) = k.neg(ech.rref(r, fc));
    ++b;
  }
  return basis;
}

/// Columns form a basis of the column space (a subset of the input columns).
template <class F>
Matrix<F> image(const Matrix<F>& m) {
  auto ech = row_reduce(m);
  Matrix<F> basis(m.field(), m.rows(), ech.pivots.size());
  for (std::size_t b = 0; b < ech.pivots.size(); ++b)
    for (std::size_t r = 0; r < m.rows(); ++r) basis(r, b) = m(r, ech.pivots[b]);
  return basis;
}

/// One exact solution X of a X = rhs, or nullopt when the system is inconsistent.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& rhs) {
  if (a.rows() != rhs.rows()) throw DimensionError("solve: " + a.shape() + " vs rhs " + rhs.shape());
  const F& k = a.field();
  Matrix<F> aug = Matrix<F>::hstack(k, a.rows(), {a, rhs});
  auto ech = row_reduce(std::move(aug));
  Matrix<F> x(k, a.cols(), rhs.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    std::size_t p = ech.pivots[r];
    if (p >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(p, j) = ech.rref(r, a.cols() + j);
  }
  return x;
}

template <class F>
std::string to_string(const Matrix<F>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace ncx
