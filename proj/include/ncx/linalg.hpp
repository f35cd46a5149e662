#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ring.hpp"

namespace ncx {

/// A ground-field subspace of the linearized coordinates of a free module.
/// Over k[x]/(x^m) the induced x-action is that of the ambient module.
template <class F>
struct Subspace {
  CoeffRing<F> ring;
  Matrix<F> basis;  // columns

  std::size_t dim() const { return basis.cols(); }
  std::size_t ambient() const { return basis.rows(); }
};

/// Ground-field dimension of a quotient and, over k[x]/(x^m), the ranks of
/// x, x^2, ..., x^{m-1} acting on it.
struct QuotientDim {
  std::size_t dim = 0;
  std::vector<std::size_t> x_ranks;

  bool operator==(const QuotientDim&) const = default;
  bool is_zero() const { return dim == 0; }
};

template <class F>
RingMatrix<F> mat_mul(const RingMatrix<F>& a, const RingMatrix<F>& b) {
  return a * b;
}

template <class F>
Matrix<F> linearize(const RingMatrix<F>& a) {
  return a.linearize();
}

template <class F>
Subspace<F> kernel_basis(const RingMatrix<F>& a) {
  return {a.ring(), kernel(a.linearize())};
}

template <class F>
Subspace<F> image_basis(const RingMatrix<F>& a) {
  return {a.ring(), image(a.linearize())};
}

/// Ground-field rank of the map.
template <class F>
std::size_t rank(const RingMatrix<F>& a) {
  return rank(a.linearize());
}

/// One solution X of a X = rhs over the ring. Columns of rhs are solved
/// independently on linearized coordinates; a vector of ground-field
/// coordinates is always an element of the free module, so the result is
/// automatically x-equivariant.
template <class F>
std::optional<RingMatrix<F>> solve(const RingMatrix<F>& a, const RingMatrix<F>& rhs) {
  if (!(a.ring() == rhs.ring())) throw RingMismatch("solve: ring mismatch");
  if (a.rows() != rhs.rows()) throw DimensionError("solve: " + a.shape() + " vs rhs " + rhs.shape());
  const auto& ring = a.ring();
  const int m = ring.trunc;
  Matrix<F> la = a.linearize();
  // rhs columns as coordinate vectors
  Matrix<F> b(ring.field, rhs.rows() * m, rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j)
    for (std::size_t i = 0; i < rhs.rows(); ++i) {
      auto c = rhs.entry(i, j);
      for (int k = 0; k < m; ++k) b(i * m + k, j) = c[k];
    }
  auto x = solve(la, b);
  if (!x) return std::nullopt;
  RingMatrix<F> out(ring, a.cols(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      std::vector<typename F::value_type> c(m);
      for (int k = 0; k < m; ++k) c[k] = (*x)(i * m + k, j);
      out.set_entry(i, j, c);
    }
  return out;
}

template <class F>
Matrix<F> join_columns(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw DimensionError("join_columns: ambient mismatch");
  return Matrix<F>::hstack(a.field(), a.rows(), {a, b});
}

/// True when every column of `small` lies in the column span of `big`.
template <class F>
bool contains(const Matrix<F>& big, const Matrix<F>& small) {
  return rank(join_columns(big, small)) == rank(big);
}

/// dim span(big)/span(small) plus x-power ranks on the quotient. The
/// ambient is `trunc`-linearized; throws if small is not inside big.
template <class F>
QuotientDim quotient_dim(const CoeffRing<F>& ring, const Matrix<F>& big, const Matrix<F>& small) {
  if (big.rows() != small.rows()) throw DimensionError("quotient_dim: ambient mismatch");
  std::size_t rb = rank(big), rs = rank(small);
  if (rank(join_columns(big, small)) != rb) throw Error("quotient_dim: B not contained in Z");
  QuotientDim q;
  q.dim = rb - rs;
  if (ring.trunc > 1) {
    const std::size_t n = big.rows() / ring.trunc;
    Matrix<F> x = x_action(ring, n);
    Matrix<F> power = big;
    for (int k = 1; k < ring.trunc; ++k) {
      power = x * power;
      q.x_ranks.push_back(rank(join_columns(power, small)) - rs);
    }
  }
  return q;
}

template <class F>
QuotientDim quotient_dim(const Subspace<F>& big, const Subspace<F>& small) {
  return quotient_dim(big.ring, big.basis, small.basis);
}

}  // namespace ncx
