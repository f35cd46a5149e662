#pragma once

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace ncx {

enum class RingKind { prime_field, rationals, truncated_poly };

/// Exact coefficient ring: a ground field, optionally truncated as k[x]/(x^m).
/// With m == 1 the ring is the ground field itself.
template <class F>
struct CoeffRing {
  F field{};
  int trunc = 1;

  CoeffRing() = default;
  explicit CoeffRing(F f, int m = 1) : field(std::move(f)), trunc(m) {
    if (m < 1) throw Error("CoeffRing: truncation order must be >= 1");
    if constexpr (std::is_same_v<F, RationalField>)
      if (m != 1) throw Error("CoeffRing: truncation is only supported over GF(p)");
  }

  RingKind kind() const {
    if constexpr (std::is_same_v<F, RationalField>) return RingKind::rationals;
    return trunc == 1 ? RingKind::prime_field : RingKind::truncated_poly;
  }
  bool is_field() const { return trunc == 1; }

  bool operator==(const CoeffRing& o) const { return field == o.field && trunc == o.trunc; }

  std::string name() const {
    if (trunc == 1) return field.name();
    return field.name() + "[x]/(x^" + std::to_string(trunc) + ")";
  }
};

/// Matrix over a CoeffRing. Stored as coefficient layers A = sum_k A_k x^k
/// (one layer per power below the truncation order); an empty layer list is
/// the zero matrix.
template <class F>
class RingMatrix {
 public:
  using value_type = typename F::value_type;
  using Ring = CoeffRing<F>;

  RingMatrix() = default;
  RingMatrix(Ring ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols) {}

  static RingMatrix zero(const Ring& ring, std::size_t rows, std::size_t cols) {
    return RingMatrix(ring, rows, cols);
  }
  static RingMatrix identity(const Ring& ring, std::size_t n) { return monomial(ring, n, 0); }
  /// x^k times the n x n identity.
  static RingMatrix monomial(const Ring& ring, std::size_t n, int k) {
    RingMatrix m(ring, n, n);
    if (n == 0 || k >= ring.trunc) return m;
    m.materialize();
    for (std::size_t i = 0; i < n; ++i) m.layers_[k](i, i) = ring.field.one();
    return m;
  }
  static RingMatrix from_ground(const Ring& ring, const Matrix<F>& a) {
    RingMatrix m(ring, a.rows(), a.cols());
    if (a.is_zero()) return m;
    m.materialize();
    m.layers_[0] = a;
    return m;
  }

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  bool is_zero() const {
    for (const auto& l : layers_)
      if (!l.is_zero()) return false;
    return true;
  }

  Matrix<F> layer(int k) const {
    if (layers_.empty()) return Matrix<F>(ring_.field, rows_, cols_);
    return layers_.at(k);
  }

  /// Coefficients (1, x, ..., x^{m-1}) of entry (i, j).
  std::vector<value_type> entry(std::size_t i, std::size_t j) const {
    std::vector<value_type> c(ring_.trunc, ring_.field.zero());
    if (!layers_.empty())
      for (int k = 0; k < ring_.trunc; ++k) c[k] = layers_[k](i, j);
    return c;
  }
  void set_entry(std::size_t i, std::size_t j, const std::vector<value_type>& coeffs) {
    if (static_cast<int>(coeffs.size()) != ring_.trunc)
      throw DimensionError("RingMatrix::set_entry: coefficient vector must have length m");
    materialize();
    for (int k = 0; k < ring_.trunc; ++k) layers_[k](i, j) = coeffs[k];
  }
  void add_to_coeff(std::size_t i, std::size_t j, int k, const value_type& v) {
    materialize();
    layers_[k](i, j) = ring_.field.add(layers_[k](i, j), v);
  }

  bool operator==(const RingMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(ring_ == o.ring_)) return false;
    if (layers_.empty() || o.layers_.empty()) return is_zero() && o.is_zero();
    return layers_ == o.layers_;
  }

  RingMatrix operator*(const RingMatrix& o) const {
    check_ring(o);
    if (cols_ != o.rows_) throw DimensionError("RingMatrix product: " + shape() + " times " + o.shape());
    RingMatrix out(ring_, rows_, o.cols_);
    if (layers_.empty() || o.layers_.empty() || rows_ == 0 || o.cols_ == 0 || cols_ == 0) return out;
    const int m = ring_.trunc;
    for (int a = 0; a < m; ++a) {
      if (layers_[a].is_zero()) continue;
      for (int b = 0; a + b < m; ++b) {
        if (o.layers_[b].is_zero()) continue;
        out.materialize();
        out.layers_[a + b] += layers_[a] * o.layers_[b];
      }
    }
    return out;
  }

  RingMatrix& operator+=(const RingMatrix& o) {
    check_ring(o);
    check_shape(o, "sum");
    if (o.layers_.empty()) return *this;
    if (layers_.empty()) {
      layers_ = o.layers_;
      return *this;
    }
    for (int k = 0; k < ring_.trunc; ++k) layers_[k] += o.layers_[k];
    return *this;
  }
  RingMatrix& operator-=(const RingMatrix& o) { return *this += -o; }
  RingMatrix operator+(const RingMatrix& o) const { RingMatrix r = *this; r += o; return r; }
  RingMatrix operator-(const RingMatrix& o) const { RingMatrix r = *this; r += -o; return r; }
  RingMatrix operator-() const {
    RingMatrix r = *this;
    for (auto& l : r.layers_) l = -l;
    return r;
  }
  RingMatrix scaled(const value_type& s) const {
    RingMatrix r = *this;
    for (auto& l : r.layers_) l = l.scaled(s);
    return r;
  }

  RingMatrix transpose() const {
    RingMatrix t(ring_, cols_, rows_);
    for (const auto& l : layers_) t.layers_.push_back(l.transpose());
    return t;
  }

  RingMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("RingMatrix::block out of range");
    RingMatrix b(ring_, nr, nc);
    for (const auto& l : layers_) b.layers_.push_back(l.block(r0, c0, nr, nc));
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const RingMatrix& b) {
    check_ring(b);
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw DimensionError("RingMatrix::set_block: " + b.shape() + " at (" + std::to_string(r0) + "," +
                           std::to_string(c0) + ") in " + shape());
    if (b.layers_.empty() && layers_.empty()) return;
    materialize();
    for (int k = 0; k < ring_.trunc; ++k) layers_[k].set_block(r0, c0, b.layer(k));
  }

  /// The same map on ground-field coordinates: generator g, power k sits at g*m + k.
  Matrix<F> linearize() const {
    const int m = ring_.trunc;
    Matrix<F> out(ring_.field, rows_ * m, cols_ * m);
    if (layers_.empty()) return out;
    if (m == 1) return layers_[0];
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        for (int s = 0; s < m; ++s)
          for (int t = 0; t <= s; ++t) out(i * m + s, j * m + t) = layers_[s - t](i, j);
    return out;
  }

  /// Adds left(:, col) * x^k * right(row, :) into this matrix. A null
  /// factor stands for the identity.
  void add_outer(const RingMatrix* left, std::size_t col, int k, const RingMatrix* right, std::size_t row,
                 bool negate) {
    const auto& K = ring_.field;
    const int m = ring_.trunc;
    if ((left && left->rows() != rows_) || (right && right->cols() != cols_))
      throw DimensionError("add_outer: shape mismatch");
    if ((left && left->layers_.empty()) || (right && right->layers_.empty())) return;
    materialize();
    const std::size_t i0 = left ? 0 : col, i1 = left ? rows_ : col + 1;
    const std::size_t j0 = right ? 0 : row, j1 = right ? cols_ : row + 1;
    const int la_max = left ? m : 1, lb_max = right ? m : 1;
    for (int a = 0; a < la_max && a + k < m; ++a)
      for (int b = 0; b < lb_max && a + b + k < m; ++b)
        for (std::size_t i = i0; i < i1; ++i) {
          value_type lv = left ? left->layers_[a](i, col) : K.one();
          if (K.is_zero(lv)) continue;
          for (std::size_t j = j0; j < j1; ++j) {
            value_type rv = right ? right->layers_[b](row, j) : K.one();
            if (K.is_zero(rv)) continue;
            value_type pr = K.mul(lv, rv);
            auto& slot = layers_[a + b + k](i, j);
            slot = negate ? K.sub(slot, pr) : K.add(slot, pr);
          }
        }
  }

  const std::vector<Matrix<F>>& layers() const { return layers_; }

 private:
  void materialize() {
    if (!layers_.empty()) return;
    layers_.assign(ring_.trunc, Matrix<F>(ring_.field, rows_, cols_));
  }
  void check_ring(const RingMatrix& o) const {
    if (!(ring_ == o.ring_)) throw RingMismatch("RingMatrix: " + ring_.name() + " vs " + o.ring_.name());
  }
  void check_shape(const RingMatrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string("RingMatrix ") + what + ": " + shape() + " vs " + o.shape());
  }

  Ring ring_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Matrix<F>> layers_;
};

template <class F>
RingMatrix<F> block_diagonal(const CoeffRing<F>& ring, const std::vector<RingMatrix<F>>& parts) {
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) r += p.rows(), c += p.cols();
  RingMatrix<F> out(ring, r, c);
  r = c = 0;
  for (const auto& p : parts) {
    out.set_block(r, c, p);
    r += p.rows();
    c += p.cols();
  }
  return out;
}

/// Matrix of x acting on ground-field coordinates of a free module of rank n.
template <class F>
Matrix<F> x_action(const CoeffRing<F>& ring, std::size_t n) {
  return RingMatrix<F>::monomial(ring, n, 1).linearize();
}

}  // namespace ncx
