#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "support.hpp"

namespace ncx {

/// A graded free module with degree-raising differential d^i: X^i -> X^{i+1}
/// whose N-fold composites vanish. Bounded complexes store degrees
/// [lo, hi]; periodic ones store one period.
template <class F>
class NComplex {
 public:
  using Ring = CoeffRing<F>;
  using Mat = RingMatrix<F>;

  NComplex() = default;
  NComplex(int N, Ring ring, Support support, std::vector<std::size_t> dims)
      : N_(N), ring_(std::move(ring)), support_(support), dims_(std::move(dims)) {
    if (N_ < 2) throw Error("NComplex: N must be >= 2");
    if (dims_.size() != support_.size()) throw DimensionError("NComplex: dims do not match support");
    for (std::size_t s = 0; s < dims_.size(); ++s) {
      int i = support_.degree(s);
      diffs_.emplace_back(ring_, dim(i + 1), dim(i));
    }
  }

  static NComplex zero(int N, const Ring& ring) { return NComplex(N, ring, Support::bounded(0, -1), {}); }

  int N() const { return N_; }
  const Ring& ring() const { return ring_; }
  const Support& support() const { return support_; }
  bool periodic() const { return support_.periodic; }

  std::size_t dim(int i) const {
    auto s = support_.index(i);
    return s ? dims_[*s] : 0;
  }
  /// d^i as a dim(i+1) x dim(i) matrix.
  Mat d(int i) const {
    auto s = support_.index(i);
    if (!s) return Mat(ring_, dim(i + 1), 0);
    return diffs_[*s];
  }
  void set_d(int i, Mat m) {
    auto s = support_.index(i);
    if (!s) {
      if (m.rows() * m.cols() != 0 && !m.is_zero())
        throw DimensionError("NComplex::set_d outside support at degree " + std::to_string(i));
      return;
    }
    diffs_[*s] = std::move(m);
  }

  /// d^{i+r-1} ... d^i; r = 0 is the identity of X^i. Lengths <= 0 other
  /// than 0 itself give the zero map (used for vanishing composites).
  Mat comp(int i, int r) const {
    if (r < 0) throw Error("composite: negative length");
    Mat acc = Mat::identity(ring_, dim(i));
    for (int k = 0; k < r; ++k) acc = d(i + k) * acc;
    return acc;
  }

  /// Degrees scanned by homology and validation.
  DegreeRange window() const {
    if (periodic()) return {0, support_.period - 1};
    if (support_.empty()) return {0, -1};
    return {support_.lo - N_, support_.hi + N_};
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Mat>& diffs() const { return diffs_; }

  bool operator==(const NComplex& o) const {
    return N_ == o.N_ && ring_ == o.ring_ && support_ == o.support_ && dims_ == o.dims_ && diffs_ == o.diffs_;
  }

 private:
  int N_ = 2;
  Ring ring_{};
  Support support_{};
  std::vector<std::size_t> dims_;
  std::vector<Mat> diffs_;
};

/// A degreewise family f^i: X^i -> Y^i. When source and target are both
/// periodic the maps are keyed by residue, otherwise by degree.
template <class F>
class ChainMapN {
 public:
  using Mat = RingMatrix<F>;

  ChainMapN() = default;
  ChainMapN(NComplex<F> source, NComplex<F> target) : source_(std::move(source)), target_(std::move(target)) {
    if (source_.N() != target_.N()) throw Error("ChainMapN: N mismatch");
    if (!(source_.ring() == target_.ring())) throw RingMismatch("ChainMapN: ring mismatch");
    if (source_.periodic() && target_.periodic() && source_.support().period != target_.support().period)
      throw Error("ChainMapN: periodic source and target must share a period");
  }

  const NComplex<F>& source() const { return source_; }
  const NComplex<F>& target() const { return target_; }
  bool periodic() const { return source_.periodic() && target_.periodic(); }

  int key(int i) const { return periodic() ? floor_mod(i, source_.support().period) : i; }

  Mat at(int i) const {
    auto it = maps_.find(key(i));
    if (it != maps_.end()) return it->second;
    return Mat(source_.ring(), target_.dim(i), source_.dim(i));
  }
  void set(int i, Mat m) {
    if (m.rows() != target_.dim(i) || m.cols() != source_.dim(i))
      throw DimensionError("ChainMapN::set: shape " + m.shape() + " at degree " + std::to_string(i));
    if (m.rows() * m.cols() == 0) return;
    maps_[key(i)] = std::move(m);
  }

  /// Degrees on which the map can be nonzero, widened by one for squares.
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

  const std::map<int, Mat>& maps() const { return maps_; }

 private:
  NComplex<F> source_, target_;
  std::map<int, Mat> maps_;
};

struct ValidationReport {
  bool ok = true;
  std::optional<int> degree;
  std::string message;
};

template <class F>
ValidationReport validate(const NComplex<F>& x) {
  const int N = x.N();
  DegreeRange w = x.window();
  if (x.periodic()) w.hi += N;
  for (int i = w.lo; i <= w.hi; ++i) {
    auto di = x.d(i);
    if (di.rows() != x.dim(i + 1) || di.cols() != x.dim(i))
      return {false, i, "d^" + std::to_string(i) + " has shape " + di.shape() + ", expected " +
                            std::to_string(x.dim(i + 1)) + "x" + std::to_string(x.dim(i))};
  }
  for (int i = w.lo; i <= w.hi; ++i) {
    if (!x.comp(i, N).is_zero())
      return {false, i, "composite of " + std::to_string(N) + " differentials starting at degree " +
                            std::to_string(i) + " is nonzero"};
  }
  return {};
}

template <class F>
ValidationReport validate(const ChainMapN<F>& f) {
  for (const auto* x : {&f.source(), &f.target()}) {
    auto r = validate(*x);
    if (!r.ok) return r;
  }
  DegreeRange w = f.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto fi = f.at(i);
    if (fi.rows() != f.target().dim(i) || fi.cols() != f.source().dim(i))
      return {false, i, "f^" + std::to_string(i) + " has the wrong shape"};
    if (!(f.at(i + 1) * f.source().d(i) == f.target().d(i) * fi))
      return {false, i, "square at degree " + std::to_string(i) + " does not commute"};
  }
  return {};
}

template <class F>
RingMatrix<F> composite(const NComplex<F>& x, int i, int r) {
  if (r < 0 || r > x.N()) throw Error("composite: r must lie in [0, N]");
  return x.comp(i, r);
}

/// D^j_i(R^rank): R^rank in degrees j-i+1..j joined by identities.
template <class F>
NComplex<F> disk(int N, const CoeffRing<F>& ring, int j, int i, std::size_t rank) {
  if (i < 1 || i > N) throw Error("disk: i must lie in [1, N]");
  NComplex<F> x(N, ring, Support::bounded(j - i + 1, j), std::vector<std::size_t>(i, rank));
  for (int n = j - i + 1; n < j; ++n) x.set_d(n, RingMatrix<F>::identity(ring, rank));
  return x;
}

/// Theta^k: (Theta^k X)^i = X^{i+k}.
template <class F>
NComplex<F> theta(const NComplex<F>& x, int k) {
  const auto& s = x.support();
  if (x.periodic()) {
    std::vector<std::size_t> dims(s.period);
    for (int i = 0; i < s.period; ++i) dims[i] = x.dim(i + k);
    NComplex<F> y(x.N(), x.ring(), s, dims);
    for (int i = 0; i < s.period; ++i) y.set_d(i, x.d(i + k));
    return y;
  }
  NComplex<F> y(x.N(), x.ring(), Support::bounded(s.lo - k, s.hi - k), x.dims());
  for (int i = s.lo; i <= s.hi; ++i) y.set_d(i - k, x.d(i));
  return y;
}

namespace detail {

/// Block sizes of a direct sum of terms.
struct Blocks {
  std::vector<std::size_t> sizes;
  std::size_t offset(std::size_t b) const {
    std::size_t o = 0;
    for (std::size_t k = 0; k < b; ++k) o += sizes[k];
    return o;
  }
  std::size_t total() const { return offset(sizes.size()); }
};

template <class F>
void put(RingMatrix<F>& m, const Blocks& rows, std::size_t r, const Blocks& cols, std::size_t c,
         const RingMatrix<F>& b) {
  if (b.rows() == 0 || b.cols() == 0) return;
  m.set_block(rows.offset(r), cols.offset(c), b);
}

/// Support of a complex whose degree m involves source degrees m+a..m+b.
inline Support shifted_support(const Support& s, int a, int b) {
  if (s.periodic) return s;
  if (s.empty()) return s;
  return Support::bounded(s.lo - b, s.hi - a);
}

}  // namespace detail

/// (Sigma X)^m = X^{m+1} + ... + X^{m+N-1}; identity superdiagonal band and
/// a bottom row of negative composites -d^{m+1+c}_{N-1-c}.
template <class F>
NComplex<F> sigma(const NComplex<F>& x) {
  const int N = x.N();
  const auto& ring = x.ring();
  Support s = detail::shifted_support(x.support(), 1, N - 1);
  auto summands = [&](int m) {
    detail::Blocks b;
    for (int c = 0; c < N - 1; ++c) b.sizes.push_back(x.dim(m + 1 + c));
    return b;
  };
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < s.size(); ++k) dims.push_back(summands(s.degree(k)).total());
  NComplex<F> y(N, ring, s, dims);
  for (std::size_t k = 0; k < s.size(); ++k) {
    int m = s.degree(k);
    auto src = summands(m), dst = summands(m + 1);
    RingMatrix<F> dm(ring, dst.total(), src.total());
    for (int a = 0; a + 1 < N - 1; ++a)
      detail::put(dm, dst, a, src, a + 1, RingMatrix<F>::identity(ring, x.dim(m + 2 + a)));
    for (int c = 0; c < N - 1; ++c) detail::put(dm, dst, N - 2, src, c, -x.comp(m + 1 + c, N - 1 - c));
    y.set_d(m, std::move(dm));
  }
  return y;
}

/// (Sigma^{-1} X)^m = X^{m-N+1} + ... + X^{m-1}; first column of negative
/// composites -d^{m-N+1}_{a+1} and an identity superdiagonal band.
template <class F>
NComplex<F> sigma_inv(const NComplex<F>& x) {
  const int N = x.N();
  const auto& ring = x.ring();
  Support s = detail::shifted_support(x.support(), -(N - 1), -1);
  auto summands = [&](int m) {
    detail::Blocks b;
    for (int c = 0; c < N - 1; ++c) b.sizes.push_back(x.dim(m - N + 1 + c));
    return b;
  };
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < s.size(); ++k) dims.push_back(summands(s.degree(k)).total());
  NComplex<F> y(N, ring, s, dims);
  for (std::size_t k = 0; k < s.size(); ++k) {
    int m = s.degree(k);
    auto src = summands(m), dst = summands(m + 1);
    RingMatrix<F> dm(ring, dst.total(), src.total());
    for (int a = 0; a < N - 1; ++a) detail::put(dm, dst, a, src, 0, -x.comp(m - N + 1, a + 1));
    for (int c = 1; c < N - 1; ++c)
      detail::put(dm, dst, c - 1, src, c, RingMatrix<F>::identity(ring, x.dim(m - N + 1 + c)));
    y.set_d(m, std::move(dm));
  }
  return y;
}

/// C(f)^m = Y^m + X^{m+1} + ... + X^{m+N-1}, Y-summand first.
template <class F>
NComplex<F> cone(const ChainMapN<F>& f) {
  auto rep = validate(f);
  if (!rep.ok) throw Error("cone: invalid chain map: " + rep.message);
  const auto& X = f.source();
  const auto& Y = f.target();
  const int N = X.N();
  const auto& ring = X.ring();
  Support s;
  if (X.periodic() != Y.periodic()) throw Error("cone: mixed bounded/periodic maps are not supported");
  if (X.periodic()) {
    s = X.support();
  } else {
    Support sx = detail::shifted_support(X.support(), 1, N - 1);
    const auto& sy = Y.support();
    if (sx.empty()) s = sy;
    else if (sy.empty()) s = sx;
    else s = Support::bounded(std::min(sx.lo, sy.lo), std::max(sx.hi, sy.hi));
  }
  auto summands = [&](int m) {
    detail::Blocks b;
    b.sizes.push_back(Y.dim(m));
    for (int c = 1; c < N; ++c) b.sizes.push_back(X.dim(m + c));
    return b;
  };
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < s.size(); ++k) dims.push_back(summands(s.degree(k)).total());
  NComplex<F> c(N, ring, s, dims);
  for (std::size_t k = 0; k < s.size(); ++k) {
    int m = s.degree(k);
    auto src = summands(m), dst = summands(m + 1);
    RingMatrix<F> dm(ring, dst.total(), src.total());
    detail::put(dm, dst, 0, src, 0, Y.d(m));
    detail::put(dm, dst, 0, src, 1, f.at(m + 1));
    for (int a = 1; a + 1 < N; ++a) detail::put(dm, dst, a, src, a + 1, RingMatrix<F>::identity(ring, X.dim(m + 1 + a)));
    for (int cc = 1; cc < N; ++cc) detail::put(dm, dst, N - 1, src, cc, -X.comp(m + cc, N - cc));
    c.set_d(m, std::move(dm));
  }
  return c;
}

template <class F>
ChainMapN<F> identity_map(const NComplex<F>& x) {
  ChainMapN<F> f(x, x);
  for (std::size_t k = 0; k < x.support().size(); ++k) {
    int i = x.support().degree(k);
    f.set(i, RingMatrix<F>::identity(x.ring(), x.dim(i)));
  }
  return f;
}

template <class F>
ChainMapN<F> zero_map(const NComplex<F>& x, const NComplex<F>& y) {
  return ChainMapN<F>(x, y);
}

/// g after f.
template <class F>
ChainMapN<F> compose(const ChainMapN<F>& g, const ChainMapN<F>& f) {
  ChainMapN<F> h(f.source(), g.target());
  DegreeRange w = h.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto v = g.at(i) * f.at(i);
    if (!v.is_zero()) h.set(i, v);
  }
  return h;
}

template <class F>
ChainMapN<F> add_maps(const ChainMapN<F>& f, const ChainMapN<F>& g, bool subtract = false) {
  ChainMapN<F> h(f.source(), f.target());
  DegreeRange w = h.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto v = subtract ? f.at(i) - g.at(i) : f.at(i) + g.at(i);
    if (!v.is_zero()) h.set(i, v);
  }
  return h;
}

template <class F>
bool maps_equal(const ChainMapN<F>& f, const ChainMapN<F>& g) {
  DegreeRange w = f.window();
  for (int i = w.lo; i <= w.hi; ++i)
    if (!(f.at(i) == g.at(i))) return false;
  return true;
}

template <class F>
NComplex<F> direct_sum(const NComplex<F>& x, const NComplex<F>& y) {
  if (x.N() != y.N() || !(x.ring() == y.ring())) throw Error("direct_sum: incompatible complexes");
  Support s;
  if (x.periodic() || y.periodic()) {
    if (!(x.periodic() && y.periodic() && x.support().period == y.support().period))
      throw Error("direct_sum: periodic summands must share a period");
    s = x.support();
  } else if (x.support().empty()) {
    return y;
  } else if (y.support().empty()) {
    return x;
  } else {
    s = Support::bounded(std::min(x.support().lo, y.support().lo), std::max(x.support().hi, y.support().hi));
  }
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < s.size(); ++k) dims.push_back(x.dim(s.degree(k)) + y.dim(s.degree(k)));
  NComplex<F> z(x.N(), x.ring(), s, dims);
  for (std::size_t k = 0; k < s.size(); ++k) {
    int i = s.degree(k);
    z.set_d(i, block_diagonal(x.ring(), {x.d(i), y.d(i)}));
  }
  return z;
}

/// Degrees outside [lo, hi] replaced by zero; periodic inputs are unrolled.
template <class F>
NComplex<F> restrict_to(const NComplex<F>& x, int lo, int hi) {
  if (lo > hi) return NComplex<F>::zero(x.N(), x.ring());
  std::vector<std::size_t> dims;
  for (int i = lo; i <= hi; ++i) dims.push_back(x.dim(i));
  NComplex<F> y(x.N(), x.ring(), Support::bounded(lo, hi), dims);
  for (int i = lo; i < hi; ++i) y.set_d(i, x.d(i));
  return y;
}

/// Repeat a periodic complex so that its period becomes `period`.
template <class F>
NComplex<F> inflate(const NComplex<F>& x, int period) {
  if (!x.periodic() || period % x.support().period != 0)
    throw Error("inflate: target period must be a multiple of the period");
  std::vector<std::size_t> dims;
  for (int i = 0; i < period; ++i) dims.push_back(x.dim(i));
  NComplex<F> y(x.N(), x.ring(), Support::cyclic(period), dims);
  for (int i = 0; i < period; ++i) y.set_d(i, x.d(i));
  return y;
}

/// Degreewise Hom(-, R): (X*)^i = (X^{-i})*, differential the transpose of d^{-i-1}.
template <class F>
NComplex<F> dual(const NComplex<F>& x) {
  const auto& s = x.support();
  Support t = s.periodic ? s : (s.empty() ? s : Support::bounded(-s.hi, -s.lo));
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < t.size(); ++k) dims.push_back(x.dim(-t.degree(k)));
  NComplex<F> y(x.N(), x.ring(), t, dims);
  for (std::size_t k = 0; k < t.size(); ++k) {
    int i = t.degree(k);
    y.set_d(i, x.d(-i - 1).transpose());
  }
  return y;
}

/// Homology dimensions H^i_r for every scanned degree i and 1 <= r <= N-1.
struct HomologyFingerprint {
  int N = 2;
  std::map<std::pair<int, int>, QuotientDim> entries;

  bool is_zero() const {
    for (const auto& [k, v] : entries)
      if (!v.is_zero()) return false;
    return true;
  }
  QuotientDim at(int i, int r) const {
    auto it = entries.find({i, r});
    return it == entries.end() ? QuotientDim{} : it->second;
  }
  bool operator==(const HomologyFingerprint&) const = default;
};

/// Z^i_r = ker d^i_{r} as a ground-field subspace of X^i.
template <class F>
Subspace<F> cycles(const NComplex<F>& x, int i, int r) {
  return kernel_basis(x.comp(i, r));
}

/// B^i_r = im d^{i-r}_{r}.
template <class F>
Subspace<F> boundaries(const NComplex<F>& x, int i, int r) {
  return image_basis(x.comp(i - r, r));
}

template <class F>
QuotientDim homology_at(const NComplex<F>& x, int i, int r) {
  const int N = x.N();
  return quotient_dim(cycles(x, i, r), boundaries(x, i, N - r));
}

template <class F>
HomologyFingerprint homology(const NComplex<F>& x) {
  HomologyFingerprint h;
  h.N = x.N();
  DegreeRange w = x.window();
  for (int i = w.lo; i <= w.hi; ++i)
    for (int r = 1; r < x.N(); ++r) h.entries[{i, r}] = homology_at(x, i, r);
  return h;
}

/// Ground-field dimensions of C^i_r = coker d^{i-r}_{r}.
template <class F>
std::map<std::pair<int, int>, std::size_t> cokernels(const NComplex<F>& x) {
  std::map<std::pair<int, int>, std::size_t> out;
  DegreeRange w = x.window();
  for (int i = w.lo; i <= w.hi; ++i)
    for (int r = 1; r < x.N(); ++r)
      out[{i, r}] = x.dim(i) * x.ring().trunc - rank(x.comp(i - r, r));
  return out;
}

template <class F>
bool is_n_exact(const NComplex<F>& x) {
  DegreeRange w = x.window();
  for (int i = w.lo; i <= w.hi; ++i)
    for (int r = 1; r < x.N(); ++r)
      if (!homology_at(x, i, r).is_zero()) return false;
  return true;
}

/// beta_{<= n}: terms above degree n dropped. Periodic inputs are unrolled
/// over `periods` periods plus a margin of N below n.
template <class F>
NComplex<F> brutal_truncate(const NComplex<F>& x, int n, int periods = 3) {
  if (x.periodic()) return restrict_to(x, n - periods * x.support().period - x.N() + 1, n);
  const auto& s = x.support();
  if (s.empty() || n < s.lo) return NComplex<F>::zero(x.N(), x.ring());
  return restrict_to(x, s.lo, std::min(n, s.hi));
}

}  // namespace ncx
