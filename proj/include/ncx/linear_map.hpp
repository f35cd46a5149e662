#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace ncx {

/// A direct sum of matrix spaces Hom(R^c, R^r). Ground-field coordinates are
/// laid out block by block, entries row-major, m coefficients per entry.
template <class F>
struct BlockSpace {
  CoeffRing<F> ring;
  std::vector<std::pair<std::size_t, std::size_t>> shapes;

  std::size_t add(std::size_t rows, std::size_t cols) {
    shapes.emplace_back(rows, cols);
    return shapes.size() - 1;
  }
  std::size_t block_dim(std::size_t b) const { return shapes[b].first * shapes[b].second * ring.trunc; }
  std::size_t dim() const {
    std::size_t d = 0;
    for (std::size_t b = 0; b < shapes.size(); ++b) d += block_dim(b);
    return d;
  }
  std::vector<std::size_t> offsets() const {
    std::vector<std::size_t> off(shapes.size() + 1, 0);
    for (std::size_t b = 0; b < shapes.size(); ++b) off[b + 1] = off[b] + block_dim(b);
    return off;
  }
  std::vector<RingMatrix<F>> zero() const {
    std::vector<RingMatrix<F>> v;
    v.reserve(shapes.size());
    for (auto [r, c] : shapes) v.emplace_back(ring, r, c);
    return v;
  }
};

template <class F>
using BlockVector = std::vector<RingMatrix<F>>;

template <class F>
void flatten_into(const BlockSpace<F>& space, const BlockVector<F>& v, Matrix<F>& out, std::size_t col) {
  const int m = space.ring.trunc;
  std::size_t pos = 0;
  for (std::size_t b = 0; b < space.shapes.size(); ++b) {
    const auto& blk = v[b];
    auto [r, c] = space.shapes[b];
    if (blk.rows() != r || blk.cols() != c) throw DimensionError("flatten: block shape mismatch");
    if (!blk.layers().empty())
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          for (int k = 0; k < m; ++k) out(pos + (i * c + j) * m + k, col) = blk.layers()[k](i, j);
    pos += r * c * m;
  }
}

template <class F>
Matrix<F> flatten(const BlockSpace<F>& space, const BlockVector<F>& v) {
  Matrix<F> out(space.ring.field, space.dim(), 1);
  flatten_into(space, v, out, 0);
  return out;
}

template <class F>
BlockVector<F> unflatten(const BlockSpace<F>& space, const Matrix<F>& coords, std::size_t col = 0) {
  const int m = space.ring.trunc;
  BlockVector<F> v = space.zero();
  std::size_t pos = 0;
  for (std::size_t b = 0; b < space.shapes.size(); ++b) {
    auto [r, c] = space.shapes[b];
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        for (int k = 0; k < m; ++k) {
          const auto& val = coords(pos + (i * c + j) * m + k, col);
          if (!space.ring.field.is_zero(val)) v[b].add_to_coeff(i, j, k, val);
        }
    pos += r * c * m;
  }
  return v;
}

/// Linear combination sum_k coeffs(k, col) * basis[k].
template <class F>
BlockVector<F> combine(const BlockSpace<F>& space, const std::vector<BlockVector<F>>& basis, const Matrix<F>& coeffs,
                       std::size_t col = 0) {
  BlockVector<F> v = space.zero();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& c = coeffs(k, col);
    if (space.ring.field.is_zero(c)) continue;
    for (std::size_t b = 0; b < v.size(); ++b)
      if (!basis[k][b].is_zero()) v[b] += basis[k][b].scaled(c);
  }
  return v;
}

/// A linear map between block spaces written as a sum of terms
/// out[o] += left * in[i] * right. Missing left/right factors are identities.
template <class F>
class LinearMap {
 public:
  struct Term {
    std::size_t out, in;
    std::optional<RingMatrix<F>> left, right;
    bool negate = false;
  };

  LinearMap(BlockSpace<F> in, BlockSpace<F> out) : in_(std::move(in)), out_(std::move(out)) {}

  const BlockSpace<F>& in_space() const { return in_; }
  const BlockSpace<F>& out_space() const { return out_; }

  void add(std::size_t out, std::size_t in, std::optional<RingMatrix<F>> left, std::optional<RingMatrix<F>> right,
           bool negate = false) {
    std::size_t r = left ? left->rows() : in_.shapes[in].first;
    std::size_t c = right ? right->cols() : in_.shapes[in].second;
    if (left && left->cols() != in_.shapes[in].first) throw DimensionError("LinearMap term: left factor");
    if (right && right->rows() != in_.shapes[in].second) throw DimensionError("LinearMap term: right factor");
    if (r != out_.shapes[out].first || c != out_.shapes[out].second)
      throw DimensionError("LinearMap term: output shape");
    if ((left && left->is_zero()) || (right && right->is_zero())) return;
    if (r == 0 || c == 0 || in_.block_dim(in) == 0) return;
    by_input_.resize(in_.shapes.size());
    by_input_[in].push_back(terms_.size());
    terms_.push_back({out, in, std::move(left), std::move(right), negate});
  }

  BlockVector<F> apply(const BlockVector<F>& x) const {
    BlockVector<F> y = out_.zero();
    for (const auto& t : terms_) {
      const auto& xin = x[t.in];
      if (xin.is_zero()) continue;
      RingMatrix<F> v = t.left ? *t.left * xin : xin;
      if (t.right) v = v * *t.right;
      if (t.negate) y[t.out] -= v; else y[t.out] += v;
    }
    return y;
  }

  /// Ground-field matrix with respect to standard coordinates.
  Matrix<F> matrix() const {
    const auto& ring = in_.ring;
    const int m = ring.trunc;
    Matrix<F> out(ring.field, out_.dim(), in_.dim());
    auto out_off = out_.offsets();
    std::size_t col = 0;
    for (std::size_t b = 0; b < in_.shapes.size(); ++b) {
      auto [r, c] = in_.shapes[b];
      const std::vector<std::size_t>* ts = b < by_input_.size() ? &by_input_[b] : nullptr;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          for (int k = 0; k < m; ++k, ++col) {
            if (!ts) continue;
            for (std::size_t ti : *ts) {
              const auto& t = terms_[ti];
              auto [orow, ocol] = out_.shapes[t.out];
              RingMatrix<F> contrib(ring, orow, ocol);
              contrib.add_outer(t.left ? &*t.left : nullptr, i, k, t.right ? &*t.right : nullptr, j, t.negate);
              scatter(contrib, out_off[t.out], ocol, out, col);
            }
          }
    }
    return out;
  }

  /// Ground-field matrix of the map restricted to span(basis); column k is
  /// the image of basis[k].
  Matrix<F> matrix_on(const std::vector<BlockVector<F>>& basis) const {
    Matrix<F> out(in_.ring.field, out_.dim(), basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) flatten_into(out_, apply(basis[k]), out, k);
    return out;
  }

 private:
  void scatter(const RingMatrix<F>& contrib, std::size_t off, std::size_t ocols, Matrix<F>& out,
               std::size_t col) const {
    const int m = in_.ring.trunc;
    const auto& K = in_.ring.field;
    if (contrib.layers().empty()) return;
    for (std::size_t i = 0; i < contrib.rows(); ++i)
      for (std::size_t j = 0; j < contrib.cols(); ++j)
        for (int k = 0; k < m; ++k) {
          const auto& v = contrib.layers()[k](i, j);
          if (K.is_zero(v)) continue;
          auto& slot = out(off + (i * ocols + j) * m + k, col);
          slot = K.add(slot, v);
        }
  }

  BlockSpace<F> in_, out_;
  std::vector<Term> terms_;
  std::vector<std::vector<std::size_t>> by_input_;
};

/// Basis of ker(map) as block vectors in the input space.
template <class F>
std::vector<BlockVector<F>> kernel_vectors(const LinearMap<F>& map) {
  Matrix<F> k = kernel(map.matrix());
  std::vector<BlockVector<F>> out;
  for (std::size_t c = 0; c < k.cols(); ++c) out.push_back(unflatten(map.in_space(), k, c));
  return out;
}

/// Basis of ker(map restricted to span(basis)), expressed as block vectors.
template <class F>
std::vector<BlockVector<F>> kernel_vectors_on(const LinearMap<F>& map, const std::vector<BlockVector<F>>& basis) {
  Matrix<F> k = kernel(map.matrix_on(basis));
  std::vector<BlockVector<F>> out;
  for (std::size_t c = 0; c < k.cols(); ++c) out.push_back(combine(map.in_space(), basis, k, c));
  return out;
}

}  // namespace ncx
