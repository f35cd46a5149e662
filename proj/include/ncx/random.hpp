#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <type_traits>
#include <vector>

#include "homotopy.hpp"
#include "ncomplex.hpp"

namespace ncx {

/// Deterministic stream for trial `trial` of a campaign seeded with `seed`.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t trial = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    gen_.seed(seq);
  }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do v = gen_();
    while (v >= limit);
    return v % n;
  }
  /// Uniform in [lo, hi].
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin(unsigned num = 1, unsigned den = 2) { return below(den) < num; }

 private:
  std::mt19937_64 gen_;
};

template <class F>
typename F::value_type random_scalar(const F& field, Rng& rng) {
  if constexpr (std::is_same_v<F, RationalField>) {
    long long num = rng.range(-3, 3);
    long long den = rng.coin(1, 4) ? rng.range(1, 3) : 1;
    return field.mul(field.from_int(num), field.inv(field.from_int(den)));
  } else {
    return field.from_int(static_cast<long long>(rng.below(field.p)));
  }
}

/// Entries nonzero with probability num/den.
template <class F>
RingMatrix<F> random_matrix(const CoeffRing<F>& ring, std::size_t rows, std::size_t cols, Rng& rng, unsigned num = 1,
                            unsigned den = 1) {
  RingMatrix<F> m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rng.coin(num, den)) continue;
      std::vector<typename F::value_type> c;
      for (int k = 0; k < ring.trunc; ++k) c.push_back(random_scalar(ring.field, rng));
      m.set_entry(i, j, c);
    }
  return m;
}

/// Invertible over the ring: the constant layer must be invertible.
template <class F>
RingMatrix<F> random_invertible(const CoeffRing<F>& ring, std::size_t n, Rng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    auto m = random_matrix(ring, n, n, rng);
    if (rank(m.layer(0)) == n) return m;
  }
  return RingMatrix<F>::identity(ring, n);
}

/// Conjugates every differential by a random degreewise change of basis.
template <class F>
NComplex<F> scramble(const NComplex<F>& x, Rng& rng) {
  if (x.periodic() || x.support().empty()) return x;
  const auto& s = x.support();
  std::vector<RingMatrix<F>> t, tinv;
  for (int i = s.lo; i <= s.hi; ++i) {
    auto m = random_invertible(x.ring(), x.dim(i), rng);
    tinv.push_back(*solve(m, RingMatrix<F>::identity(x.ring(), x.dim(i))));
    t.push_back(std::move(m));
  }
  NComplex<F> y = x;
  for (int i = s.lo; i < s.hi; ++i) y.set_d(i, t[i + 1 - s.lo] * x.d(i) * tinv[i - s.lo]);
  return y;
}

struct RandomBounds {
  int max_rank = 2;
  int max_width = 6;
  int max_pieces = 3;
};

/// Direct sum of random disks D^j_i(R^r) inside [lo, lo + width - 1], scrambled.
/// With `full_only` every disk has length N, so the result is N-exact.
template <class F>
NComplex<F> random_disk_sum(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b, int lo = 0,
                            bool full_only = false) {
  int width = std::max(1, b.max_width);
  int pieces = rng.range(1, std::max(1, b.max_pieces));
  if (width == 1) pieces = 1;
  NComplex<F> x = NComplex<F>::zero(N, ring);
  for (int k = 0; k < pieces; ++k) {
    int len = full_only ? N : rng.range(1, N);
    if (len > width && !full_only) len = width;
    int hi_j = lo + std::max(width, len) - 1;
    int j = rng.range(lo + len - 1, hi_j);
    x = direct_sum(x, disk(N, ring, j, len, static_cast<std::size_t>(rng.range(1, b.max_rank))));
  }
  return scramble(x, rng);
}

/// A random element of the chain-map space X -> Y.
template <class F>
ChainMapN<F> random_chain_map(const NComplex<F>& x, const NComplex<F>& y, Rng& rng) {
  auto basis = chain_map_basis(x, y);
  auto [a, b] = align(x, y);
  ChainMapN<F> f(a, b);
  for (const auto& g : basis) {
    auto c = random_scalar(x.ring().field, rng);
    if (x.ring().field.is_zero(c)) continue;
    DegreeRange w = f.window();
    for (int i = w.lo; i <= w.hi; ++i) f.set(i, f.at(i) + g.at(i).scaled(c));
  }
  return f;
}

/// A random family s^i: X^i -> Y^{i-N+1} over the joint window.
template <class F>
HomotopyWitness<F> random_witness(const NComplex<F>& x, const NComplex<F>& y, Rng& rng) {
  const int N = x.N();
  HomotopyWitness<F> w;
  w.periodic = x.periodic() && y.periodic();
  w.period = w.periodic ? x.support().period : 0;
  DegreeRange r;
  if (w.periodic) r = {0, w.period - 1};
  else if (x.support().empty()) return w;
  else r = {x.support().lo, x.support().hi};
  for (int i = r.lo; i <= r.hi; ++i)
    if (x.dim(i) && y.dim(i - N + 1)) w.s[i] = random_matrix(x.ring(), y.dim(i - N + 1), x.dim(i), rng);
  return w;
}

/// f built from a random homotopy, so null-homotopic by construction.
template <class F>
std::pair<ChainMapN<F>, HomotopyWitness<F>> random_null_homotopic(const NComplex<F>& x, const NComplex<F>& y,
                                                                  Rng& rng) {
  auto w = random_witness(x, y, rng);
  return {reconstruct(x, y, w), w};
}

/// Periodic complex R --x^a--> R --x^a--> ... of period 1.
template <class F>
NComplex<F> x_power_complex(int N, const CoeffRing<F>& ring, int a = 1) {
  NComplex<F> x(N, ring, Support::cyclic(1), {1});
  x.set_d(0, RingMatrix<F>::monomial(ring, 1, a));
  auto rep = validate(x);
  if (!rep.ok) throw Error("x_power_complex: " + rep.message);
  return x;
}

/// Mixed generator: disk sums, cones of random maps, truncated x-power
/// complexes over k[x]/(x^m).
template <class F>
NComplex<F> random_ncomplex(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b = {}) {
  int kind = static_cast<int>(rng.below(ring.trunc > 1 ? 3 : 2));
  if (kind == 0 || b.max_width < 2) return random_disk_sum(N, ring, rng, b);
  if (kind == 1) {
    RandomBounds half = b;
    half.max_width = std::max(1, b.max_width / 2);
    half.max_pieces = std::max(1, b.max_pieces - 1);
    auto x = random_disk_sum(N, ring, rng, half);
    auto y = random_disk_sum(N, ring, rng, half);
    auto c = cone(random_chain_map(x, y, rng));
    // no larger in total rank than the biggest disk sum the bounds allow
    std::size_t total = 0;
    for (int i = c.window().lo; i <= c.window().hi; ++i) total += c.dim(i);
    std::size_t cap = static_cast<std::size_t>(b.max_rank) * static_cast<std::size_t>(std::max(1, b.max_pieces)) *
                      static_cast<std::size_t>(N);
    if (c.support().empty() || (c.support().hi - c.support().lo + 1 <= b.max_width && total <= cap)) return c;
    return random_disk_sum(N, ring, rng, b);
  }
  int a = rng.range(1, std::max(1, ring.trunc - 1));
  if (a * N < ring.trunc) a = (ring.trunc + N - 1) / N;
  int w = rng.range(1, b.max_width);
  auto x = restrict_to(x_power_complex(N, ring, a), 0, w - 1);
  return direct_sum(x, random_disk_sum(N, ring, rng, {1, b.max_width, 1}));
}

}  // namespace ncx
