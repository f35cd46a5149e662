#pragma once

#include <initializer_list>
#include <vector>

#include "ncx/ncx.hpp"

namespace testutil {

using GF = ncx::PrimeField;
using QQ = ncx::RationalField;

inline ncx::CoeffRing<GF> gf(unsigned p, int m = 1) { return ncx::CoeffRing<GF>(GF(p), m); }
inline ncx::CoeffRing<QQ> qq() { return ncx::CoeffRing<QQ>(QQ{}); }

/// Matrix with constant entries given row by row.
template <class F>
ncx::RingMatrix<F> mat(const ncx::CoeffRing<F>& ring, std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t r = rows.size(), c = r ? rows.begin()->size() : 0;
  ncx::RingMatrix<F> m(ring, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (long long v : row) {
      std::vector<typename F::value_type> coeffs(static_cast<std::size_t>(ring.trunc), ring.field.zero());
      coeffs[0] = ring.field.from_int(v);
      m.set_entry(i, j++, coeffs);
    }
    ++i;
  }
  return m;
}

/// 1x1 matrix c * x^k.
template <class F>
ncx::RingMatrix<F> xpow(const ncx::CoeffRing<F>& ring, int k, long long c = 1) {
  return ncx::RingMatrix<F>::monomial(ring, 1, k).scaled(ring.field.from_int(c));
}

/// The periodic x-multiplication complex over GF(2)[x]/(x^3) with N = 3.
inline ncx::NComplex<GF> x_complex() { return ncx::x_power_complex(3, gf(2, 3), 1); }

}  // namespace testutil
