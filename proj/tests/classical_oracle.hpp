#pragma once

// Ordinary (N = 2) chain complexes over a field, with elimination written
// from scratch so results can be compared against the library.

#include <climits>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ncx/ncomplex.hpp"

namespace oracle {

struct ModP {
  using S = std::int64_t;
  std::int64_t p;
  S norm(S a) const { return ((a % p) + p) % p; }
  S add(S a, S b) const { return (a + b) % p; }
  S sub(S a, S b) const { return norm(a - b); }
  S mul(S a, S b) const { return (a * b) % p; }
  S inv(S a) const {
    S r = 1, e = p - 2, b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  bool zero(S a) const { return a == 0; }
};

struct Rat {
  using S = mpq_class;
  S norm(const S& a) const { return a; }
  S add(const S& a, const S& b) const { return a + b; }
  S sub(const S& a, const S& b) const { return a - b; }
  S mul(const S& a, const S& b) const { return a * b; }
  S inv(const S& a) const { return 1 / a; }
  bool zero(const S& a) const { return sgn(a) == 0; }
};

template <class K>
using Dense = std::vector<std::vector<typename K::S>>;

template <class K>
Dense<K> zeros(std::size_t r, std::size_t c) {
  return Dense<K>(r, std::vector<typename K::S>(c, typename K::S(0)));
}

template <class K>
std::size_t rank(const K& k, Dense<K> a) {
  std::size_t r = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && k.zero(a[piv][c])) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    auto inv = k.inv(a[r][c]);
    for (auto& v : a[r]) v = k.mul(v, inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || k.zero(a[i][c])) continue;
      auto f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = k.sub(a[i][j], k.mul(f, a[r][j]));
    }
    ++r;
  }
  return r;
}

template <class K>
Dense<K> mul(const K& k, const Dense<K>& a, const Dense<K>& b, std::size_t inner, std::size_t cols) {
  auto out = zeros<K>(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t t = 0; t < inner; ++t)
      for (std::size_t j = 0; j < cols; ++j) out[i][j] = k.add(out[i][j], k.mul(a[i][t], b[t][j]));
  return out;
}

/// Bounded complex: dims[i - lo], d[i - lo] : C^i -> C^{i+1}.
template <class K>
struct Complex {
  int lo = 0, hi = -1;
  std::vector<std::size_t> dims;
  std::vector<Dense<K>> d;

  std::size_t dim(int i) const { return i < lo || i > hi ? 0 : dims[static_cast<std::size_t>(i - lo)]; }
  Dense<K> diff(int i) const {
    if (i < lo || i >= hi) return zeros<K>(dim(i + 1), dim(i));
    return d[static_cast<std::size_t>(i - lo)];
  }
};

template <class K, class F>
typename K::S scalar(const K& k, const F& field, const typename F::value_type& v) {
  if constexpr (std::is_same_v<K, Rat>) {
    (void)k;
    (void)field;
    return v;
  } else {
    (void)field;
    return k.norm(static_cast<std::int64_t>(v));
  }
}

template <class K, class F>
Dense<K> convert(const K& k, const ncx::RingMatrix<F>& m) {
  auto out = zeros<K>(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = scalar(k, m.ring().field, m.entry(i, j)[0]);
  return out;
}

/// Reads a bounded library complex's raw matrices.
template <class K, class F>
Complex<K> from_library(const K& k, const ncx::NComplex<F>& x) {
  Complex<K> c;
  if (x.support().empty()) return c;
  c.lo = x.support().lo;
  c.hi = x.support().hi;
  for (int i = c.lo; i <= c.hi; ++i) {
    c.dims.push_back(x.dim(i));
    c.d.push_back(convert(k, x.d(i)));
  }
  return c;
}

template <class K>
bool is_complex(const K& k, const Complex<K>& c) {
  for (int i = c.lo; i < c.hi; ++i) {
    auto dd = mul(k, c.diff(i + 1), c.diff(i), c.dim(i + 1), c.dim(i));
    for (const auto& row : dd)
      for (const auto& v : row)
        if (!k.zero(v)) return false;
  }
  return true;
}

template <class K>
std::map<int, std::size_t> homology(const K& k, const Complex<K>& c) {
  std::map<int, std::size_t> h;
  for (int i = c.lo; i <= c.hi; ++i)
    h[i] = c.dim(i) - rank(k, c.diff(i)) - rank(k, c.diff(i - 1));
  return h;
}

struct Hom {
  std::size_t chain = 0, null = 0, hom_k = 0;
};

/// Dimensions of chain maps, null-homotopic maps and their quotient,
/// assembled as explicit linear systems in the matrix entries.
template <class K>
Hom hom_dims(const K& k, const Complex<K>& x, const Complex<K>& y) {
  Hom out;
  if (x.dims.empty() || y.dims.empty()) return out;
  int L = std::min(x.lo, y.lo), H = std::max(x.hi, y.hi);
  // f^i entries
  std::map<int, std::size_t> f_off;
  std::size_t nf = 0;
  for (int i = L; i <= H; ++i) {
    f_off[i] = nf;
    nf += y.dim(i) * x.dim(i);
  }
  auto fidx = [&](int i, std::size_t r, std::size_t c) { return f_off[i] + r * x.dim(i) + c; };
  // chain condition d_Y f^i - f^{i+1} d_X = 0
  Dense<K> sys;
  for (int i = L - 1; i <= H; ++i) {
    auto dy = y.diff(i), dx = x.diff(i);
    for (std::size_t r = 0; r < y.dim(i + 1); ++r)
      for (std::size_t c = 0; c < x.dim(i); ++c) {
        std::vector<typename K::S> row(nf, typename K::S(0));
        if (i >= L)
          for (std::size_t t = 0; t < y.dim(i); ++t) row[fidx(i, t, c)] = k.add(row[fidx(i, t, c)], dy[r][t]);
        if (i + 1 <= H)
          for (std::size_t t = 0; t < x.dim(i + 1); ++t)
            row[fidx(i + 1, r, t)] = k.sub(row[fidx(i + 1, r, t)], dx[t][c]);
        sys.push_back(std::move(row));
      }
  }
  out.chain = nf - (sys.empty() ? 0 : rank(k, sys));
  // boundaries of unit homotopies h^i : X^i -> Y^{i-1}
  Dense<K> cols;
  for (int i = L; i <= H + 1; ++i)
    for (std::size_t a = 0; a < y.dim(i - 1); ++a)
      for (std::size_t b = 0; b < x.dim(i); ++b) {
        std::vector<typename K::S> v(nf, typename K::S(0));
        // f^j = d_Y h^j + h^{j+1} d_X
        if (i <= H && i >= L) {
          auto dy = y.diff(i - 1);
          for (std::size_t r = 0; r < y.dim(i); ++r) v[fidx(i, r, b)] = k.add(v[fidx(i, r, b)], dy[r][a]);
        }
        if (i - 1 >= L && i - 1 <= H) {
          auto dx = x.diff(i - 1);
          for (std::size_t c = 0; c < x.dim(i - 1); ++c)
            v[fidx(i - 1, a, c)] = k.add(v[fidx(i - 1, a, c)], dx[b][c]);
        }
        cols.push_back(std::move(v));
      }
  out.null = cols.empty() ? 0 : rank(k, cols);
  out.hom_k = out.chain - out.null;
  return out;
}

/// Classical cone with C^i = Y^i + X^{i+1} and d = [[d_Y, f], [0, -d_X]].
template <class K>
Complex<K> cone(const K& k, const Complex<K>& x, const Complex<K>& y, const std::map<int, Dense<K>>& f) {
  Complex<K> c;
  int lo = INT_MAX, hi = INT_MIN;
  if (!y.dims.empty()) lo = y.lo, hi = y.hi;
  if (!x.dims.empty()) lo = std::min(lo, x.lo - 1), hi = std::max(hi, x.hi - 1);
  if (lo > hi) return c;
  c.lo = lo;
  c.hi = hi;
  for (int i = lo; i <= hi; ++i) c.dims.push_back(y.dim(i) + x.dim(i + 1));
  for (int i = lo; i <= hi; ++i) {
    auto m = zeros<K>(c.dim(i + 1), c.dim(i));
    auto dy = y.diff(i), dx = x.diff(i + 1);
    for (std::size_t r = 0; r < y.dim(i + 1); ++r)
      for (std::size_t s = 0; s < y.dim(i); ++s) m[r][s] = dy[r][s];
    auto it = f.find(i + 1);
    if (it != f.end())
      for (std::size_t r = 0; r < y.dim(i + 1); ++r)
        for (std::size_t s = 0; s < x.dim(i + 1); ++s) m[r][y.dim(i) + s] = it->second[r][s];
    for (std::size_t r = 0; r < x.dim(i + 2); ++r)
      for (std::size_t s = 0; s < x.dim(i + 1); ++s) m[y.dim(i + 1) + r][y.dim(i) + s] = k.sub(typename K::S(0), dx[r][s]);
    c.d.push_back(std::move(m));
  }
  return c;
}

}  // namespace oracle
