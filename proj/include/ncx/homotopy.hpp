#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "linear_map.hpp"
#include "ncomplex.hpp"

namespace ncx {

/// s^i: X^i -> Y^{i-N+1}, keyed like the chain map it witnesses.
template <class F>
struct HomotopyWitness {
  bool periodic = false;
  int period = 0;
  std::map<int, RingMatrix<F>> s;

  int key(int i) const { return periodic ? floor_mod(i, period) : i; }
  RingMatrix<F> at(int i, const CoeffRing<F>& ring, std::size_t rows, std::size_t cols) const {
    auto it = s.find(key(i));
    if (it != s.end()) return it->second;
    return RingMatrix<F>(ring, rows, cols);
  }
};

/// Both complexes on a common footing: periodic with one period, or bounded.
/// A periodic partner of a bounded complex is cut down to a window wide
/// enough that every chain map and homotopy fits inside it.
template <class F>
std::pair<NComplex<F>, NComplex<F>> align(const NComplex<F>& x, const NComplex<F>& y) {
  if (x.N() != y.N()) throw Error("align: N mismatch");
  if (!(x.ring() == y.ring())) throw RingMismatch("align: ring mismatch");
  const int N = x.N();
  if (x.periodic() && y.periodic()) {
    int p = std::lcm(x.support().period, y.support().period);
    return {x.support().period == p ? x : inflate(x, p), y.support().period == p ? y : inflate(y, p)};
  }
  auto cut = [&](const NComplex<F>& per, const NComplex<F>& bnd) {
    if (bnd.support().empty()) return NComplex<F>::zero(N, x.ring());
    return restrict_to(per, bnd.support().lo - N - 1, bnd.support().hi + N + 1);
  };
  if (x.periodic()) return {cut(x, y), y};
  if (y.periodic()) return {x, cut(y, x)};
  return {x, y};
}

template <class F>
ChainMapN<F> transfer(const ChainMapN<F>& f, const NComplex<F>& x, const NComplex<F>& y) {
  ChainMapN<F> g(x, y);
  DegreeRange w = g.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto m = f.at(i);
    if (m.rows() == y.dim(i) && m.cols() == x.dim(i) && !m.is_zero()) g.set(i, m);
  }
  return g;
}

/// Evaluates sum_j d_Y{N-1-j} s^{i+j} d_X{j} at every degree.
template <class F>
ChainMapN<F> reconstruct(const NComplex<F>& x, const NComplex<F>& y, const HomotopyWitness<F>& w) {
  const int N = x.N();
  ChainMapN<F> f(x, y);
  DegreeRange win = f.window();
  for (int i = win.lo; i <= win.hi; ++i) {
    RingMatrix<F> acc(x.ring(), y.dim(i), x.dim(i));
    for (int j = 0; j < N; ++j) {
      int k = i + j;
      auto s = w.at(k, x.ring(), y.dim(k - N + 1), x.dim(k));
      if (s.is_zero()) continue;
      acc += y.comp(i - (N - 1 - j), N - 1 - j) * s * x.comp(i, j);
    }
    if (!acc.is_zero()) f.set(i, acc);
  }
  return f;
}

namespace detail {

struct SlotIndex {
  bool periodic = false;
  int period = 1;
  std::map<int, std::size_t> slots;

  int key(int i) const { return periodic ? floor_mod(i, period) : i; }
  std::optional<std::size_t> find(int i) const {
    auto it = slots.find(key(i));
    if (it == slots.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace detail

/// Coordinates of degreewise maps X -> Y, homotopies and commuting squares
/// for a pair of aligned complexes.
template <class F>
class HomSetup {
 public:
  using Mat = RingMatrix<F>;

  HomSetup(NComplex<F> x, NComplex<F> y) : x_(std::move(x)), y_(std::move(y)) {
    const int N = x_.N();
    maps_.ring = homs_.ring = squares_.ring = x_.ring();
    bool per = x_.periodic() && y_.periodic();
    if (x_.periodic() != y_.periodic()) throw Error("HomSetup: complexes must be aligned");
    if (per && x_.support().period != y_.support().period) throw Error("HomSetup: periods differ");
    for (auto* idx : {&map_idx_, &hom_idx_, &sq_idx_}) {
      idx->periodic = per;
      idx->period = per ? x_.support().period : 1;
    }
    if (per) {
      for (int i = 0; i < x_.support().period; ++i) degrees_.push_back(i);
    } else if (!x_.support().empty() && !y_.support().empty()) {
      int lo = std::min(x_.support().lo, y_.support().lo) - N;
      int hi = std::max(x_.support().hi, y_.support().hi) + N;
      for (int i = lo; i <= hi; ++i) degrees_.push_back(i);
    }
    for (int i : degrees_) {
      if (x_.dim(i) && y_.dim(i)) map_idx_.slots[i] = maps_.add(y_.dim(i), x_.dim(i));
      if (x_.dim(i) && y_.dim(i - N + 1)) hom_idx_.slots[i] = homs_.add(y_.dim(i - N + 1), x_.dim(i));
      if (x_.dim(i) && y_.dim(i + 1)) sq_idx_.slots[i] = squares_.add(y_.dim(i + 1), x_.dim(i));
    }
  }

  const NComplex<F>& source() const { return x_; }
  const NComplex<F>& target() const { return y_; }
  const BlockSpace<F>& maps() const { return maps_; }
  const BlockSpace<F>& homotopies() const { return homs_; }

  /// f -> (f^{i+1} d_X^i - d_Y^i f^i)_i
  LinearMap<F> commutator() const {
    LinearMap<F> op(maps_, squares_);
    for (int i : degrees_) {
      auto q = sq_idx_.find(i);
      if (!q) continue;
      if (auto a = map_idx_.find(i + 1)) op.add(*q, *a, std::nullopt, x_.d(i));
      if (auto b = map_idx_.find(i)) op.add(*q, *b, y_.d(i), std::nullopt, true);
    }
    return op;
  }

  /// s -> (sum_j d_Y{N-1-j} s^{i+j} d_X{j})_i
  LinearMap<F> reconstruction() const {
    const int N = x_.N();
    LinearMap<F> op(homs_, maps_);
    for (int i : degrees_) {
      auto o = map_idx_.find(i);
      if (!o) continue;
      for (int j = 0; j < N; ++j) {
        auto h = hom_idx_.find(i + j);
        if (!h) continue;
        int r = N - 1 - j;
        std::optional<Mat> left, right;
        if (r > 0) left = y_.comp(i - r, r);
        if (j > 0) right = x_.comp(i, j);
        op.add(*o, *h, left, right);
      }
    }
    return op;
  }

  BlockVector<F> coords(const ChainMapN<F>& f) const {
    BlockVector<F> v = maps_.zero();
    for (const auto& [k, slot] : map_idx_.slots) v[slot] = f.at(k);
    return v;
  }
  ChainMapN<F> chain_map(const BlockVector<F>& v) const {
    ChainMapN<F> f(x_, y_);
    for (const auto& [k, slot] : map_idx_.slots)
      if (!v[slot].is_zero()) f.set(k, v[slot]);
    return f;
  }
  HomotopyWitness<F> witness(const BlockVector<F>& v) const {
    HomotopyWitness<F> w;
    w.periodic = hom_idx_.periodic;
    w.period = hom_idx_.period;
    for (const auto& [k, slot] : hom_idx_.slots)
      if (!v[slot].is_zero()) w.s[k] = v[slot];
    return w;
  }

 private:
  NComplex<F> x_, y_;
  std::vector<int> degrees_;
  BlockSpace<F> maps_, homs_, squares_;
  detail::SlotIndex map_idx_, hom_idx_, sq_idx_;
};

/// Solves the reconstruction identity for f as one linear system.
template <class F>
std::optional<HomotopyWitness<F>> null_homotopy(const ChainMapN<F>& f) {
  auto rep = validate(f);
  if (!rep.ok) throw Error("null_homotopy: invalid chain map: " + rep.message);
  auto [x, y] = align(f.source(), f.target());
  auto g = transfer(f, x, y);
  HomSetup<F> setup(x, y);
  auto op = setup.reconstruction();
  auto sol = solve(op.matrix(), flatten(setup.maps(), setup.coords(g)));
  if (!sol) return std::nullopt;
  auto w = setup.witness(unflatten(setup.homotopies(), *sol));
  if (!maps_equal(reconstruct(x, y, w), g)) throw Error("null_homotopy: solver returned an invalid witness");
  return w;
}

template <class F>
bool is_null_homotopic(const ChainMapN<F>& f) {
  return null_homotopy(f).has_value();
}

/// Linear-algebra data of a graded Hom: coordinates of degreewise maps, a
/// basis of the chain maps and a spanning set of the null-homotopic ones.
template <class F>
struct HomData {
  BlockSpace<F> space;
  Matrix<F> cycles;
  Matrix<F> boundaries;

  std::size_t chain_dim() const { return cycles.cols(); }
  std::size_t null_dim() const { return rank(boundaries); }
  std::size_t hom_dim() const { return chain_dim() - null_dim(); }
};

struct HomDims {
  std::size_t chain_maps = 0;
  std::size_t null_homotopic = 0;
  std::size_t hom_k = 0;
  bool operator==(const HomDims&) const = default;
};

template <class F>
HomData<F> hom_data(const HomSetup<F>& setup) {
  HomData<F> h;
  h.space = setup.maps();
  h.cycles = kernel(setup.commutator().matrix());
  h.boundaries = setup.reconstruction().matrix();
  return h;
}

template <class F>
HomDims hom_space_dim(const NComplex<F>& x, const NComplex<F>& y) {
  auto [a, b] = align(x, y);
  auto h = hom_data(HomSetup<F>(a, b));
  return {h.chain_dim(), h.null_dim(), h.hom_dim()};
}

template <class F>
std::vector<ChainMapN<F>> chain_map_basis(const NComplex<F>& x, const NComplex<F>& y) {
  auto [a, b] = align(x, y);
  HomSetup<F> setup(a, b);
  auto h = hom_data(setup);
  std::vector<ChainMapN<F>> out;
  for (std::size_t c = 0; c < h.cycles.cols(); ++c) out.push_back(setup.chain_map(unflatten(h.space, h.cycles, c)));
  return out;
}

/// A Hom space together with conversions between morphisms and coordinates.
template <class F, class M>
struct HomView {
  HomData<F> data;
  std::function<M(const Matrix<F>&)> from;
  std::function<Matrix<F>(const M&)> to;
};

/// Searches for u: X -> Y and v: Y -> X with v u - 1 and u v - 1 both
/// null-homotopic. Candidates for u are the chain-map basis, the zero map and
/// seeded random combinations; v and the two homotopies are then found by
/// one linear solve.
template <class F, class M>
std::optional<std::pair<M, M>> find_equivalence(const HomView<F, M>& xy, const HomView<F, M>& yx,
                                                const HomView<F, M>& xx, const HomView<F, M>& yy, const M& id_x,
                                                const M& id_y, const std::function<M(const M&, const M&)>& compose,
                                                std::uint64_t seed = 1, int random_tries = 24) {
  const auto& K = xy.data.space.ring.field;
  std::vector<Matrix<F>> candidates;
  const std::size_t a = xy.data.chain_dim();
  candidates.emplace_back(K, a, 1);
  for (std::size_t c = 0; c < a; ++c) {
    Matrix<F> e(K, a, 1);
    e(c, 0) = K.one();
    candidates.push_back(e);
  }
  if (a > 1 && a <= 6) {
    for (unsigned mask = 1; mask < (1u << a); ++mask) {
      if ((mask & (mask - 1)) == 0) continue;
      Matrix<F> e(K, a, 1);
      for (std::size_t c = 0; c < a; ++c)
        if (mask >> c & 1u) e(c, 0) = K.one();
      candidates.push_back(e);
    }
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < random_tries && a > 1; ++t) {
    Matrix<F> e(K, a, 1);
    for (std::size_t c = 0; c < a; ++c) e(c, 0) = K.from_int(static_cast<long long>(rng() % 7) - 3);
    candidates.push_back(e);
  }
  const auto& Cv = yx.data.cycles;
  const auto& Bx = xx.data.boundaries;
  const auto& By = yy.data.boundaries;
  const std::size_t nx = xx.data.space.dim(), ny = yy.data.space.dim();
  Matrix<F> rhs(K, nx + ny, 1);
  rhs.set_block(0, 0, xx.to(id_x));
  rhs.set_block(nx, 0, yy.to(id_y));
  for (const auto& coeff : candidates) {
    M u = xy.from(xy.data.cycles * coeff);
    const std::size_t nv = Cv.cols(), hx = Bx.cols(), hy = By.cols();
    Matrix<F> sys(K, nx + ny, nv + hx + hy);
    for (std::size_t k = 0; k < nv; ++k) {
      M v = yx.from(Cv.column(k));
      sys.set_block(0, k, xx.to(compose(v, u)));
      sys.set_block(nx, k, yy.to(compose(u, v)));
    }
    if (hx) sys.set_block(0, nv, -Bx);
    if (hy) sys.set_block(nx, nv + hx, -By);
    auto sol = solve(sys, rhs);
    if (!sol) continue;
    M v = yx.from(Cv * sol->block(0, 0, nv, 1));
    return std::make_pair(u, v);
  }
  return std::nullopt;
}

template <class F>
HomView<F, ChainMapN<F>> hom_view(const NComplex<F>& x, const NComplex<F>& y) {
  auto setup = std::make_shared<HomSetup<F>>(x, y);
  HomView<F, ChainMapN<F>> v;
  v.data = hom_data(*setup);
  v.from = [setup](const Matrix<F>& c) { return setup->chain_map(unflatten(setup->maps(), c)); };
  v.to = [setup](const ChainMapN<F>& f) { return flatten(setup->maps(), setup->coords(f)); };
  return v;
}

/// Chain maps u: X -> Y, v: Y -> X inverse to each other up to homotopy.
template <class F>
std::optional<std::pair<ChainMapN<F>, ChainMapN<F>>> find_homotopy_equivalence(const NComplex<F>& x,
                                                                               const NComplex<F>& y,
                                                                               std::uint64_t seed = 1) {
  if (x.periodic() != y.periodic()) throw Error("find_homotopy_equivalence: mixed supports");
  NComplex<F> a = x, b = y;
  if (x.periodic()) std::tie(a, b) = align(x, y);
  return find_equivalence<F, ChainMapN<F>>(hom_view(a, b), hom_view(b, a), hom_view(a, a), hom_view(b, b),
                                           identity_map(a), identity_map(b),
                                           [](const ChainMapN<F>& g, const ChainMapN<F>& f) { return compose(g, f); },
                                           seed);
}

namespace detail {

/// Rank of the map Z_X/B_X -> Z_Y/B_Y induced by f^i.
template <class F>
std::size_t induced_rank(const ChainMapN<F>& f, int i, int r) {
  const auto& X = f.source();
  const auto& Y = f.target();
  auto zx = cycles(X, i, r);
  auto by = boundaries(Y, i, X.N() - r);
  Matrix<F> img = f.at(i).linearize() * zx.basis;
  return rank(join_columns(by.basis, img)) - rank(by.basis);
}

}  // namespace detail

/// Every induced H^i_r(f) bijective; cross-checked against N-exactness of the cone.
template <class F>
bool is_quasi_iso(const ChainMapN<F>& f) {
  auto rep = validate(f);
  if (!rep.ok) throw Error("is_quasi_iso: invalid chain map: " + rep.message);
  auto [x, y] = align(f.source(), f.target());
  auto g = transfer(f, x, y);
  DegreeRange w = x.window(), wy = y.window();
  w.lo = std::min(w.lo, wy.lo);
  w.hi = std::max(w.hi, wy.hi);
  bool iso = true;
  for (int i = w.lo; i <= w.hi && iso; ++i)
    for (int r = 1; r < x.N() && iso; ++r) {
      std::size_t hx = homology_at(x, i, r).dim, hy = homology_at(y, i, r).dim;
      iso = hx == hy && detail::induced_rank(g, i, r) == hx;
    }
  bool exact = is_n_exact(cone(g));
  if (iso != exact) throw Error("is_quasi_iso: homology test and cone test disagree");
  return iso;
}

}  // namespace ncx
