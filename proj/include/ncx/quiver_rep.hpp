#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homotopy.hpp"
#include "linear_map.hpp"
#include "support.hpp"

namespace ncx {

/// Representation of the line quiver 1 -> 2 -> ... -> n by free modules.
/// Vertices are 0-based here; arrows[v] : M_v -> M_{v+1}.
template <class F>
struct LineRep {
  CoeffRing<F> ring;
  std::vector<std::size_t> vdims;
  std::vector<RingMatrix<F>> arrows;

  LineRep() = default;
  LineRep(CoeffRing<F> r, std::vector<std::size_t> dims) : ring(std::move(r)), vdims(std::move(dims)) {
    for (std::size_t v = 0; v + 1 < vdims.size(); ++v) arrows.emplace_back(ring, vdims[v + 1], vdims[v]);
  }
  static LineRep zero(const CoeffRing<F>& ring, int n) { return LineRep(ring, std::vector<std::size_t>(n, 0)); }

  int n() const { return static_cast<int>(vdims.size()); }
  std::size_t total() const { return std::accumulate(vdims.begin(), vdims.end(), std::size_t{0}); }
  bool is_zero() const { return total() == 0; }
  bool operator==(const LineRep& o) const { return ring == o.ring && vdims == o.vdims && arrows == o.arrows; }
};

/// Vertexwise matrices of a representation morphism.
template <class F>
using RepMap = std::vector<RingMatrix<F>>;

template <class F>
RepMap<F> zero_rep_map(const LineRep<F>& a, const LineRep<F>& b) {
  RepMap<F> m;
  for (int v = 0; v < a.n(); ++v) m.emplace_back(a.ring, b.vdims[v], a.vdims[v]);
  return m;
}

template <class F>
RepMap<F> identity_rep_map(const LineRep<F>& a) {
  RepMap<F> m;
  for (int v = 0; v < a.n(); ++v) m.push_back(RingMatrix<F>::identity(a.ring, a.vdims[v]));
  return m;
}

template <class F>
RepMap<F> compose(const RepMap<F>& g, const RepMap<F>& f) {
  RepMap<F> h;
  for (std::size_t v = 0; v < f.size(); ++v) h.push_back(g[v] * f[v]);
  return h;
}

template <class F>
bool is_zero(const RepMap<F>& f) {
  for (const auto& m : f)
    if (!m.is_zero()) return false;
  return true;
}

/// e^i_lambda(R^rank): zero before vertex i (1-based), R^rank with identities from i on.
template <class F>
LineRep<F> e_lambda(const CoeffRing<F>& ring, int n, int i, std::size_t rank) {
  if (i < 1 || i > n) throw Error("e_lambda: vertex out of range");
  std::vector<std::size_t> dims(n, 0);
  for (int v = i - 1; v < n; ++v) dims[v] = rank;
  LineRep<F> r(ring, dims);
  for (int v = i - 1; v + 1 < n; ++v) r.arrows[v] = RingMatrix<F>::identity(ring, rank);
  return r;
}

/// e^i_rho(R^rank): R^rank with identities up to vertex i (1-based), zero after.
template <class F>
LineRep<F> e_rho(const CoeffRing<F>& ring, int n, int i, std::size_t rank) {
  if (i < 1 || i > n) throw Error("e_rho: vertex out of range");
  std::vector<std::size_t> dims(n, 0);
  for (int v = 0; v < i; ++v) dims[v] = rank;
  LineRep<F> r(ring, dims);
  for (int v = 0; v + 1 < i; ++v) r.arrows[v] = RingMatrix<F>::identity(ring, rank);
  return r;
}

template <class F>
LineRep<F> direct_sum(const LineRep<F>& a, const LineRep<F>& b) {
  std::vector<std::size_t> dims;
  for (int v = 0; v < a.n(); ++v) dims.push_back(a.vdims[v] + b.vdims[v]);
  LineRep<F> r(a.ring, dims);
  for (int v = 0; v + 1 < a.n(); ++v) r.arrows[v] = block_diagonal(a.ring, {a.arrows[v], b.arrows[v]});
  return r;
}

/// Standard-form projective: vertex v carries P^1 + ... + P^{v+1}, arrows
/// include the leading summands.
template <class F>
LineRep<F> standard_projective(const CoeffRing<F>& ring, const std::vector<std::size_t>& ranks) {
  const int n = static_cast<int>(ranks.size());
  std::vector<std::size_t> dims(n, 0);
  std::size_t acc = 0;
  for (int v = 0; v < n; ++v) dims[v] = acc += ranks[v];
  LineRep<F> r(ring, dims);
  for (int v = 0; v + 1 < n; ++v) r.arrows[v].set_block(0, 0, RingMatrix<F>::identity(ring, dims[v]));
  return r;
}

template <class F>
bool is_rep_morphism(const LineRep<F>& a, const LineRep<F>& b, const RepMap<F>& f) {
  if (static_cast<int>(f.size()) != a.n() || a.n() != b.n()) return false;
  for (int v = 0; v < a.n(); ++v)
    if (f[v].rows() != b.vdims[v] || f[v].cols() != a.vdims[v]) return false;
  for (int v = 0; v + 1 < a.n(); ++v)
    if (!(b.arrows[v] * f[v] == f[v + 1] * a.arrows[v])) return false;
  return true;
}

struct ProjDecomposition {
  bool projective = false;
  std::vector<std::size_t> ranks;
  int failing_arrow = -1;
  std::string message;
};

/// Summand ranks P^i = coker of the arrow into vertex i. Arrows must be split
/// injections; over k[x]/(x^m) that is full column rank modulo x.
template <class F>
ProjDecomposition decompose_projective(const LineRep<F>& rep) {
  ProjDecomposition d;
  for (int v = 0; v + 1 < rep.n(); ++v) {
    const auto& a = rep.arrows[v];
    if (a.rows() != rep.vdims[v + 1] || a.cols() != rep.vdims[v]) {
      d.failing_arrow = v + 1;
      d.message = "arrow " + std::to_string(v + 1) + " has the wrong shape";
      return d;
    }
    if (rank(a.layer(0)) != a.cols()) {
      d.failing_arrow = v + 1;
      d.message = "arrow " + std::to_string(v + 1) + " is not a split injection";
      return d;
    }
  }
  d.projective = true;
  for (int v = 0; v < rep.n(); ++v) d.ranks.push_back(rep.vdims[v] - (v ? rep.vdims[v - 1] : 0));
  return d;
}

template <class F>
RingMatrix<F> invert(const RingMatrix<F>& a) {
  if (a.rows() != a.cols()) throw DimensionError("invert: matrix is not square");
  auto x = solve(a, RingMatrix<F>::identity(a.ring(), a.rows()));
  if (!x) throw Error("invert: matrix is singular");
  return *x;
}

/// Change of basis T_v from standard coordinates into the given projective
/// representation, with T_{v+1} [I; 0] = A_v T_v.
template <class F>
std::vector<RingMatrix<F>> standard_basis(const LineRep<F>& rep) {
  auto dec = decompose_projective(rep);
  if (!dec.projective) throw Error("standard_basis: " + dec.message);
  const auto& ring = rep.ring;
  std::vector<RingMatrix<F>> t;
  for (int v = 0; v < rep.n(); ++v) {
    RingMatrix<F> tv(ring, rep.vdims[v], rep.vdims[v]);
    std::size_t filled = 0;
    if (v > 0) {
      auto img = rep.arrows[v - 1] * t[v - 1];
      tv.set_block(0, 0, img);
      filled = img.cols();
    }
    Matrix<F> ground = tv.layer(0).block(0, 0, tv.rows(), filled);
    std::size_t r = rank(ground);
    for (std::size_t e = 0; e < rep.vdims[v] && filled < rep.vdims[v]; ++e) {
      Matrix<F> unit(ring.field, rep.vdims[v], 1);
      unit(e, 0) = ring.field.one();
      Matrix<F> trial = join_columns(ground, unit);
      if (rank(trial) == r + 1) {
        ground = trial;
        ++r;
        RingMatrix<F> col(ring, rep.vdims[v], 1);
        col.add_to_coeff(e, 0, 0, ring.field.one());
        tv.set_block(0, filled++, col);
      }
    }
    t.push_back(tv);
  }
  return t;
}

/// Bounded or periodic ordinary complex of line-quiver representations.
template <class F>
class RepComplex {
 public:
  RepComplex() = default;
  RepComplex(int n, CoeffRing<F> ring, Support support, std::vector<LineRep<F>> terms)
      : n_(n), ring_(std::move(ring)), support_(support), terms_(std::move(terms)) {
    if (terms_.size() != support_.size()) throw DimensionError("RepComplex: terms do not match support");
    for (std::size_t s = 0; s < terms_.size(); ++s) {
      if (terms_[s].n() != n_) throw DimensionError("RepComplex: vertex count mismatch");
      int i = support_.degree(s);
      diffs_.push_back(zero_rep_map(terms_[s], term(i + 1)));
    }
  }
  static RepComplex zero(int n, const CoeffRing<F>& ring) { return RepComplex(n, ring, Support::bounded(0, -1), {}); }

  int n() const { return n_; }
  const CoeffRing<F>& ring() const { return ring_; }
  const Support& support() const { return support_; }
  bool periodic() const { return support_.periodic; }

  LineRep<F> term(int i) const {
    auto s = support_.index(i);
    return s ? terms_[*s] : LineRep<F>::zero(ring_, n_);
  }
  std::size_t dim(int i, int v) const {
    auto s = support_.index(i);
    return s ? terms_[*s].vdims[v] : 0;
  }
  RepMap<F> d(int i) const {
    auto s = support_.index(i);
    if (!s) return zero_rep_map(term(i), term(i + 1));
    return diffs_[*s];
  }
  void set_d(int i, RepMap<F> m) {
    auto s = support_.index(i);
    if (!s) {
      if (!is_zero(m)) throw DimensionError("RepComplex::set_d outside support");
      return;
    }
    diffs_[*s] = std::move(m);
  }

  DegreeRange window() const {
    if (periodic()) return {0, support_.period - 1};
    if (support_.empty()) return {0, -1};
    return {support_.lo - 1, support_.hi + 1};
  }
  bool operator==(const RepComplex& o) const {
    return n_ == o.n_ && ring_ == o.ring_ && support_ == o.support_ && terms_ == o.terms_ && diffs_ == o.diffs_;
  }

 private:
  int n_ = 1;
  CoeffRing<F> ring_{};
  Support support_{};
  std::vector<LineRep<F>> terms_;
  std::vector<RepMap<F>> diffs_;
};

template <class F>
ValidationReport validate(const RepComplex<F>& c) {
  DegreeRange w = c.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto t = c.term(i);
    for (int v = 0; v + 1 < c.n(); ++v)
      if (t.arrows[v].rows() != t.vdims[v + 1] || t.arrows[v].cols() != t.vdims[v])
        return {false, i, "arrow " + std::to_string(v + 1) + " of the term at degree " + std::to_string(i) +
                              " has the wrong shape"};
    if (!is_rep_morphism(t, c.term(i + 1), c.d(i)))
      return {false, i, "differential at degree " + std::to_string(i) + " is not a representation morphism"};
    auto dd = compose(c.d(i + 1), c.d(i));
    if (!is_zero(dd)) return {false, i, "d^" + std::to_string(i + 1) + " d^" + std::to_string(i) + " is nonzero"};
  }
  return {};
}

/// One-term complex with `rep` in degree `deg`.
template <class F>
RepComplex<F> stalk(const LineRep<F>& rep, int deg) {
  return RepComplex<F>(rep.n(), rep.ring, Support::bounded(deg, deg), {rep});
}

template <class F>
RepComplex<F> restrict_to(const RepComplex<F>& c, int lo, int hi) {
  if (lo > hi) return RepComplex<F>::zero(c.n(), c.ring());
  std::vector<LineRep<F>> terms;
  for (int i = lo; i <= hi; ++i) terms.push_back(c.term(i));
  RepComplex<F> out(c.n(), c.ring(), Support::bounded(lo, hi), terms);
  for (int i = lo; i < hi; ++i) out.set_d(i, c.d(i));
  return out;
}

template <class F>
RepComplex<F> inflate(const RepComplex<F>& c, int period) {
  if (!c.periodic() || period % c.support().period != 0) throw Error("inflate: bad period");
  std::vector<LineRep<F>> terms;
  for (int i = 0; i < period; ++i) terms.push_back(c.term(i));
  RepComplex<F> out(c.n(), c.ring(), Support::cyclic(period), terms);
  for (int i = 0; i < period; ++i) out.set_d(i, c.d(i));
  return out;
}

template <class F>
RepComplex<F> direct_sum(const RepComplex<F>& a, const RepComplex<F>& b) {
  if (a.periodic() || b.periodic()) throw Error("direct_sum: periodic rep complexes are not supported");
  if (a.support().empty()) return b;
  if (b.support().empty()) return a;
  int lo = std::min(a.support().lo, b.support().lo), hi = std::max(a.support().hi, b.support().hi);
  std::vector<LineRep<F>> terms;
  for (int i = lo; i <= hi; ++i) terms.push_back(direct_sum(a.term(i), b.term(i)));
  RepComplex<F> out(a.n(), a.ring(), Support::bounded(lo, hi), terms);
  for (int i = lo; i < hi; ++i) {
    RepMap<F> m;
    for (int v = 0; v < a.n(); ++v) m.push_back(block_diagonal(a.ring(), {a.d(i)[v], b.d(i)[v]}));
    out.set_d(i, m);
  }
  return out;
}

/// Degreewise rep morphisms; keyed by residue when both ends are periodic.
template <class F>
class RepChainMap {
 public:
  RepChainMap() = default;
  RepChainMap(RepComplex<F> source, RepComplex<F> target) : source_(std::move(source)), target_(std::move(target)) {
    if (source_.n() != target_.n()) throw Error("RepChainMap: vertex count mismatch");
    if (periodic() && source_.support().period != target_.support().period)
      throw Error("RepChainMap: periods differ");
  }
  const RepComplex<F>& source() const { return source_; }
  const RepComplex<F>& target() const { return target_; }
  bool periodic() const { return source_.periodic() && target_.periodic(); }
  int key(int i) const { return periodic() ? floor_mod(i, source_.support().period) : i; }

  RepMap<F> at(int i) const {
    auto it = maps_.find(key(i));
    if (it != maps_.end()) return it->second;
    return zero_rep_map(source_.term(i), target_.term(i));
  }
  void set(int i, RepMap<F> m) {
    if (is_zero(m)) {
      maps_.erase(key(i));
      return;
    }
    maps_[key(i)] = std::move(m);
  }
  DegreeRange window() const {
    if (periodic()) return {0, source_.support().period - 1};
    DegreeRange r{-(1 << 29), 1 << 29};
    for (const auto* x : {&source_, &target_}) {
      if (x->periodic()) continue;
      if (x->support().empty()) return {0, -1};
      r.lo = std::max(r.lo, x->support().lo - 1);
      r.hi = std::min(r.hi, x->support().hi + 1);
    }
    return r;
  }
  const std::map<int, RepMap<F>>& maps() const { return maps_; }

 private:
  RepComplex<F> source_, target_;
  std::map<int, RepMap<F>> maps_;
};

template <class F>
RepChainMap<F> identity_map(const RepComplex<F>& c) {
  RepChainMap<F> f(c, c);
  DegreeRange w = f.window();
  for (int i = w.lo; i <= w.hi; ++i) f.set(i, identity_rep_map(c.term(i)));
  return f;
}

template <class F>
RepChainMap<F> compose(const RepChainMap<F>& g, const RepChainMap<F>& f) {
  RepChainMap<F> h(f.source(), g.target());
  DegreeRange w = h.window();
  for (int i = w.lo; i <= w.hi; ++i) h.set(i, compose(g.at(i), f.at(i)));
  return h;
}

template <class F>
RepChainMap<F> add_maps(const RepChainMap<F>& f, const RepChainMap<F>& g, bool subtract = false) {
  RepChainMap<F> h(f.source(), f.target());
  DegreeRange w = h.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto a = f.at(i), b = g.at(i);
    for (std::size_t v = 0; v < a.size(); ++v) a[v] = subtract ? a[v] - b[v] : a[v] + b[v];
    h.set(i, a);
  }
  return h;
}

template <class F>
bool maps_equal(const RepChainMap<F>& f, const RepChainMap<F>& g) {
  DegreeRange w = f.window();
  for (int i = w.lo; i <= w.hi; ++i)
    if (f.at(i) != g.at(i)) return false;
  return true;
}

template <class F>
ValidationReport validate(const RepChainMap<F>& f) {
  for (const auto* c : {&f.source(), &f.target()}) {
    auto r = validate(*c);
    if (!r.ok) return r;
  }
  DegreeRange w = f.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    if (!is_rep_morphism(f.source().term(i), f.target().term(i), f.at(i)))
      return {false, i, "component at degree " + std::to_string(i) + " is not a representation morphism"};
    if (compose(f.at(i + 1), f.source().d(i)) != compose(f.target().d(i), f.at(i)))
      return {false, i, "square at degree " + std::to_string(i) + " does not commute"};
  }
  return {};
}

/// h^i: A^i -> B^{i-1}, a classical homotopy between rep complexes.
template <class F>
struct RepHomotopy {
  bool periodic = false;
  int period = 0;
  std::map<int, RepMap<F>> h;

  RepMap<F> at(int i, const RepComplex<F>& a, const RepComplex<F>& b) const {
    auto it = h.find(periodic ? floor_mod(i, period) : i);
    if (it != h.end()) return it->second;
    return zero_rep_map(a.term(i), b.term(i - 1));
  }
};

/// d_B h + h d_A.
template <class F>
RepChainMap<F> boundary(const RepComplex<F>& a, const RepComplex<F>& b, const RepHomotopy<F>& t) {
  RepChainMap<F> f(a, b);
  DegreeRange w = f.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto x = compose(b.d(i - 1), t.at(i, a, b));
    auto y = compose(t.at(i + 1, a, b), a.d(i));
    for (std::size_t v = 0; v < x.size(); ++v) x[v] += y[v];
    f.set(i, x);
  }
  return f;
}

template <class F>
std::pair<RepComplex<F>, RepComplex<F>> align(const RepComplex<F>& x, const RepComplex<F>& y) {
  if (x.periodic() && y.periodic()) {
    int p = std::lcm(x.support().period, y.support().period);
    return {x.support().period == p ? x : inflate(x, p), y.support().period == p ? y : inflate(y, p)};
  }
  auto cut = [&](const RepComplex<F>& per, const RepComplex<F>& bnd) {
    if (bnd.support().empty()) return RepComplex<F>::zero(x.n(), x.ring());
    return restrict_to(per, bnd.support().lo - 2, bnd.support().hi + 2);
  };
  if (x.periodic()) return {cut(x, y), y};
  if (y.periodic()) return {x, cut(y, x)};
  return {x, y};
}

template <class F>
RepChainMap<F> transfer(const RepChainMap<F>& f, const RepComplex<F>& x, const RepComplex<F>& y) {
  RepChainMap<F> g(x, y);
  DegreeRange w = g.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto m = f.at(i);
    bool fits = true;
    for (int v = 0; v < x.n(); ++v) fits = fits && m[v].rows() == y.dim(i, v) && m[v].cols() == x.dim(i, v);
    if (fits) g.set(i, m);
  }
  return g;
}

/// Coordinates for degreewise rep morphisms A -> B and homotopies A^i -> B^{i-1}.
/// Morphism spaces are cut out degree by degree, so the chain and homotopy
/// operators only act on a basis of honest representation morphisms.
template <class F>
class RepHomSetup {
 public:
  RepHomSetup(RepComplex<F> a, RepComplex<F> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.periodic() != b_.periodic()) throw Error("RepHomSetup: complexes must be aligned");
    maps_.ring = homs_.ring = squares_.ring = a_.ring();
    per_ = a_.periodic();
    period_ = per_ ? a_.support().period : 1;
    if (per_) {
      for (int i = 0; i < period_; ++i) degrees_.push_back(i);
    } else if (!a_.support().empty() && !b_.support().empty()) {
      int lo = std::min(a_.support().lo, b_.support().lo) - 1;
      int hi = std::max(a_.support().hi, b_.support().hi) + 1;
      for (int i = lo; i <= hi; ++i) degrees_.push_back(i);
    }
    for (int i : degrees_) {
      add_family(maps_, map_slot_, map_basis_, i, a_.term(i), b_.term(i));
      add_family(homs_, hom_slot_, hom_basis_, i, a_.term(i), b_.term(i - 1));
      if (!a_.term(i).is_zero() && !b_.term(i + 1).is_zero()) {
        std::vector<std::size_t> s;
        for (int v = 0; v < a_.n(); ++v) s.push_back(squares_.add(b_.dim(i + 1, v), a_.dim(i, v)));
        sq_slot_[i] = s;
      }
    }
  }

  const BlockSpace<F>& maps() const { return maps_; }

  LinearMap<F> commutator() const {
    LinearMap<F> op(maps_, squares_);
    for (const auto& [i, sq] : sq_slot_) {
      auto up = find(map_slot_, i + 1), here = find(map_slot_, i);
      for (int v = 0; v < a_.n(); ++v) {
        if (up) op.add(sq[v], (*up)[v], std::nullopt, a_.d(i)[v]);
        if (here) op.add(sq[v], (*here)[v], b_.d(i)[v], std::nullopt, true);
      }
    }
    return op;
  }

  /// h -> d_B h + h d_A
  LinearMap<F> reconstruction() const {
    LinearMap<F> op(homs_, maps_);
    for (int i : degrees_) {
      auto o = find(map_slot_, i);
      if (!o) continue;
      auto h0 = find(hom_slot_, i), h1 = find(hom_slot_, i + 1);
      for (int v = 0; v < a_.n(); ++v) {
        if (h0) op.add((*o)[v], (*h0)[v], b_.d(i - 1)[v], std::nullopt);
        if (h1) op.add((*o)[v], (*h1)[v], std::nullopt, a_.d(i)[v]);
      }
    }
    return op;
  }

  HomData<F> data() const {
    HomData<F> h;
    h.space = maps_;
    auto k = kernel(commutator().matrix_on(map_basis_));
    h.cycles = Matrix<F>(maps_.ring.field, maps_.dim(), k.cols());
    for (std::size_t c = 0; c < k.cols(); ++c) flatten_into(maps_, combine(maps_, map_basis_, k, c), h.cycles, c);
    h.boundaries = reconstruction().matrix_on(hom_basis_);
    return h;
  }

  BlockVector<F> coords(const RepChainMap<F>& f) const {
    BlockVector<F> x = maps_.zero();
    for (const auto& [i, slots] : map_slot_) {
      auto m = f.at(i);
      for (int v = 0; v < a_.n(); ++v) x[slots[v]] = m[v];
    }
    return x;
  }
  RepChainMap<F> chain_map(const BlockVector<F>& x) const {
    RepChainMap<F> f(a_, b_);
    for (const auto& [i, slots] : map_slot_) {
      RepMap<F> m;
      for (int v = 0; v < a_.n(); ++v) m.push_back(x[slots[v]]);
      f.set(i, m);
    }
    return f;
  }
  RepHomotopy<F> homotopy(const BlockVector<F>& x) const {
    RepHomotopy<F> t;
    t.periodic = per_;
    t.period = period_;
    for (const auto& [i, slots] : hom_slot_) {
      RepMap<F> m;
      for (int v = 0; v < a_.n(); ++v) m.push_back(x[slots[v]]);
      if (!is_zero(m)) t.h[i] = m;
    }
    return t;
  }
  const std::vector<BlockVector<F>>& homotopy_basis() const { return hom_basis_; }
  const BlockSpace<F>& homotopies() const { return homs_; }

 private:
  using Slots = std::map<int, std::vector<std::size_t>>;

  std::optional<std::vector<std::size_t>> find(const Slots& s, int i) const {
    auto it = s.find(per_ ? floor_mod(i, period_) : i);
    if (it == s.end()) return std::nullopt;
    return it->second;
  }

  /// Adds blocks for Hom(src, dst) vertexwise and a basis of its rep morphisms.
  void add_family(BlockSpace<F>& space, Slots& slots, std::vector<BlockVector<F>>& basis, int i,
                  const LineRep<F>& src, const LineRep<F>& dst) {
    if (src.is_zero() || dst.is_zero()) return;
    const int n = a_.n();
    BlockSpace<F> local{space.ring, {}};
    BlockSpace<F> arrows{space.ring, {}};
    for (int v = 0; v < n; ++v) local.add(dst.vdims[v], src.vdims[v]);
    for (int v = 0; v + 1 < n; ++v) arrows.add(dst.vdims[v + 1], src.vdims[v]);
    LinearMap<F> op(local, arrows);
    for (int v = 0; v + 1 < n; ++v) {
      op.add(v, v, dst.arrows[v], std::nullopt);
      op.add(v, v + 1, std::nullopt, src.arrows[v], true);
    }
    auto local_basis = n > 1 ? kernel_vectors(op) : kernel_vectors_all(local);
    std::vector<std::size_t> s;
    for (int v = 0; v < n; ++v) s.push_back(space.add(dst.vdims[v], src.vdims[v]));
    slots[i] = s;
    for (auto& lb : basis) lb.resize(space.shapes.size(), RingMatrix<F>());
    for (auto& lb : basis)
      for (std::size_t k = 0; k < s.size(); ++k) lb[s[k]] = RingMatrix<F>(space.ring, dst.vdims[k], src.vdims[k]);
    for (const auto& lv : local_basis) {
      BlockVector<F> g = space.zero();
      for (int v = 0; v < n; ++v) g[s[v]] = lv[v];
      basis.push_back(std::move(g));
    }
  }

  static std::vector<BlockVector<F>> kernel_vectors_all(const BlockSpace<F>& local) {
    Matrix<F> id = Matrix<F>::identity(local.ring.field, local.dim());
    std::vector<BlockVector<F>> out;
    for (std::size_t c = 0; c < id.cols(); ++c) out.push_back(unflatten(local, id, c));
    return out;
  }

  RepComplex<F> a_, b_;
  bool per_ = false;
  int period_ = 1;
  std::vector<int> degrees_;
  BlockSpace<F> maps_, homs_, squares_;
  Slots map_slot_, hom_slot_, sq_slot_;
  std::vector<BlockVector<F>> map_basis_, hom_basis_;
};

template <class F>
HomDims rep_hom_space_dim(const RepComplex<F>& x, const RepComplex<F>& y) {
  auto [a, b] = align(x, y);
  auto h = RepHomSetup<F>(a, b).data();
  return {h.chain_dim(), h.null_dim(), h.hom_dim()};
}

/// Classical homotopy with f = d h + h d, re-verified by evaluation.
template <class F>
std::optional<RepHomotopy<F>> rep_null_homotopy(const RepChainMap<F>& f) {
  auto rep = validate(f);
  if (!rep.ok) throw Error("rep_null_homotopy: invalid chain map: " + rep.message);
  auto [a, b] = align(f.source(), f.target());
  auto g = transfer(f, a, b);
  RepHomSetup<F> setup(a, b);
  auto h = setup.data();
  auto sol = solve(h.boundaries, flatten(setup.maps(), setup.coords(g)));
  if (!sol) return std::nullopt;
  auto coeffs = combine(setup.homotopies(), setup.homotopy_basis(), *sol);
  auto t = setup.homotopy(coeffs);
  if (!maps_equal(boundary(a, b, t), g)) throw Error("rep_null_homotopy: solver returned an invalid homotopy");
  return t;
}

template <class F>
HomView<F, RepChainMap<F>> rep_hom_view(const RepComplex<F>& x, const RepComplex<F>& y) {
  auto setup = std::make_shared<RepHomSetup<F>>(x, y);
  HomView<F, RepChainMap<F>> v;
  v.data = setup->data();
  v.from = [setup](const Matrix<F>& c) { return setup->chain_map(unflatten(setup->maps(), c)); };
  v.to = [setup](const RepChainMap<F>& f) { return flatten(setup->maps(), setup->coords(f)); };
  return v;
}

template <class F>
std::optional<std::pair<RepChainMap<F>, RepChainMap<F>>> find_rep_equivalence(const RepComplex<F>& x,
                                                                              const RepComplex<F>& y,
                                                                              std::uint64_t seed = 1) {
  if (x.periodic() != y.periodic()) throw Error("find_rep_equivalence: mixed supports");
  RepComplex<F> a = x, b = y;
  if (x.periodic()) std::tie(a, b) = align(x, y);
  return find_equivalence<F, RepChainMap<F>>(
      rep_hom_view(a, b), rep_hom_view(b, a), rep_hom_view(a, a), rep_hom_view(b, b), identity_map(a),
      identity_map(b), [](const RepChainMap<F>& g, const RepChainMap<F>& f) { return compose(g, f); }, seed);
}

/// Classical homology of the complex at each vertex: (degree, 1-based vertex) -> dim.
template <class F>
std::map<std::pair<int, int>, QuotientDim> vertex_homology(const RepComplex<F>& c) {
  std::map<std::pair<int, int>, QuotientDim> out;
  DegreeRange w = c.window();
  for (int i = w.lo; i <= w.hi; ++i)
    for (int v = 0; v < c.n(); ++v) {
      auto z = kernel_basis(c.d(i)[v]);
      auto b = image_basis(c.d(i - 1)[v]);
      out[{i, v + 1}] = quotient_dim(z, b);
    }
  return out;
}

template <class F>
bool is_classically_acyclic(const RepComplex<F>& c) {
  for (const auto& [k, q] : vertex_homology(c))
    if (!q.is_zero()) return false;
  return true;
}

/// Rewrites each term in standard projective coordinates; returns the new
/// complex and the degreewise isomorphism from it to the original.
template <class F>
std::pair<RepComplex<F>, RepChainMap<F>> standardize(const RepComplex<F>& c) {
  const auto& s = c.support();
  std::vector<LineRep<F>> terms;
  std::vector<std::vector<RingMatrix<F>>> bases;
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto t = c.term(s.degree(k));
    auto dec = decompose_projective(t);
    if (!dec.projective)
      throw Error("standardize: term at degree " + std::to_string(s.degree(k)) + ": " + dec.message);
    terms.push_back(standard_projective(c.ring(), dec.ranks));
    bases.push_back(standard_basis(t));
  }
  RepComplex<F> out(c.n(), c.ring(), s, terms);
  auto basis_at = [&](int i) -> std::optional<std::vector<RingMatrix<F>>> {
    auto k = s.index(i);
    if (!k) return std::nullopt;
    return bases[*k];
  };
  for (std::size_t k = 0; k < s.size(); ++k) {
    int i = s.degree(k);
    auto t0 = basis_at(i), t1 = basis_at(i + 1);
    if (!t1) continue;
    RepMap<F> m;
    for (int v = 0; v < c.n(); ++v) m.push_back(invert((*t1)[v]) * c.d(i)[v] * (*t0)[v]);
    out.set_d(i, m);
  }
  RepChainMap<F> iso(out, c);
  for (std::size_t k = 0; k < s.size(); ++k) iso.set(s.degree(k), bases[k]);
  return {out, iso};
}

/// Standard-form ranks of a term, assuming it is already in standard form.
template <class F>
std::vector<std::size_t> standard_ranks(const LineRep<F>& r) {
  auto dec = decompose_projective(r);
  if (!dec.projective) throw Error("hat: " + dec.message);
  return dec.ranks;
}

/// Hat of a standard-form projective: vertex t carries P^{t+1} + ... + P^n,
/// arrows drop the leading summand.
template <class F>
LineRep<F> hat(const LineRep<F>& r) {
  auto ranks = standard_ranks(r);
  const int n = r.n();
  std::vector<std::size_t> dims(n, 0);
  for (int t = 0; t < n; ++t)
    for (int i = t; i < n; ++i) dims[t] += ranks[i];
  LineRep<F> out(r.ring, dims);
  for (int t = 0; t + 1 < n; ++t) out.arrows[t].set_block(0, ranks[t], RingMatrix<F>::identity(r.ring, dims[t + 1]));
  return out;
}

/// Hat on a morphism between standard-form projectives: the component at
/// vertex t is the block of the top-vertex matrix on summands t+1..n.
template <class F>
RepMap<F> hat(const LineRep<F>& a, const LineRep<F>& b, const RepMap<F>& f) {
  auto ra = standard_ranks(a), rb = standard_ranks(b);
  const int n = a.n();
  const auto& top = f[n - 1];
  RepMap<F> out;
  std::size_t oa = 0, ob = 0;
  for (int t = 0; t < n; ++t) {
    out.push_back(top.block(ob, oa, b.vdims[n - 1] - ob, a.vdims[n - 1] - oa));
    oa += ra[t];
    ob += rb[t];
  }
  return out;
}

/// Hat of a complex of projectives; terms are standardized first.
template <class F>
RepComplex<F> hat(const RepComplex<F>& c) {
  auto std_c = standardize(c).first;
  const auto& s = std_c.support();
  std::vector<LineRep<F>> terms;
  for (std::size_t k = 0; k < s.size(); ++k) terms.push_back(hat(std_c.term(s.degree(k))));
  RepComplex<F> out(c.n(), c.ring(), s, terms);
  for (std::size_t k = 0; k < s.size(); ++k) {
    int i = s.degree(k);
    if (!s.index(i + 1)) continue;
    out.set_d(i, hat(std_c.term(i), std_c.term(i + 1), std_c.d(i)));
  }
  return out;
}

/// Hat of a chain map between complexes already in standard form.
template <class F>
RepChainMap<F> hat(const RepChainMap<F>& f, const RepComplex<F>& hat_source, const RepComplex<F>& hat_target) {
  RepChainMap<F> g(hat_source, hat_target);
  DegreeRange w = f.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto a = f.source().term(i), b = f.target().term(i);
    if (a.is_zero() || b.is_zero()) continue;
    g.set(i, hat(a, b, f.at(i)));
  }
  return g;
}

}  // namespace ncx
