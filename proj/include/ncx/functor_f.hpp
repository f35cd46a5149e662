#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homotopy.hpp"
#include "ncomplex.hpp"
#include "quiver_rep.hpp"

namespace ncx {

/// Where F-degree i draws its blocks from: vertex j (1-based) of F(P)^i is
/// P^{first} + ... + P^{first+j-1}. With r = floor(i/2) and m = N r, even
/// degrees start at m and odd degrees at m + N - 1.
struct FBlockIndex {
  int degree = 0;
  bool even = true;
  int m = 0;
  int first = 0;
};

inline FBlockIndex f_block(int N, int i) {
  int r = floor_div(i, 2);
  FBlockIndex b;
  b.degree = i;
  b.even = floor_mod(i, 2) == 0;
  b.m = N * r;
  b.first = b.even ? b.m : b.m + N - 1;
  return b;
}

/// Outcome of a formula that is checked after evaluation. When the printed
/// formula fails its identity, `value` comes from the solver instead and
/// `discrepancy` says what went wrong.
template <class T>
struct Checked {
  T value;
  bool formula_ok = true;
  std::string discrepancy;
};

namespace detail {

template <class F>
Blocks f_blocks(const NComplex<F>& p, int i) {
  const int N = p.N();
  auto b = f_block(N, i);
  Blocks out;
  for (int a = 0; a < N - 1; ++a) out.sizes.push_back(p.dim(b.first + a));
  return out;
}

template <class F>
LineRep<F> f_term(const NComplex<F>& p, int i) {
  return standard_projective(p.ring(), f_blocks(p, i).sizes);
}

/// Vertexwise restriction of a top-vertex matrix between standard-form
/// representations.
template <class F>
RepMap<F> from_top(const LineRep<F>& a, const LineRep<F>& b, const RingMatrix<F>& top) {
  RepMap<F> m;
  for (int v = 0; v < a.n(); ++v) m.push_back(top.block(0, 0, b.vdims[v], a.vdims[v]));
  return m;
}

/// Block (a, b) of a top-vertex matrix.
template <class F>
RingMatrix<F> top_block(const RingMatrix<F>& top, const Blocks& rows, const Blocks& cols, int a, int b) {
  return top.block(rows.offset(a), cols.offset(b), rows.sizes[a], cols.sizes[b]);
}

/// mu (even -> odd) and lambda (odd -> even) at the top vertex.
template <class F>
RingMatrix<F> f_diff_top(const NComplex<F>& p, int i) {
  const int N = p.N();
  const auto& ring = p.ring();
  auto src = f_blocks(p, i), dst = f_blocks(p, i + 1);
  auto bi = f_block(N, i);
  RingMatrix<F> out(ring, dst.total(), src.total());
  if (bi.even) {
    for (int a = 0; a < N - 1; ++a)
      for (int b = a; b < N - 1; ++b) put(out, dst, a, src, b, p.comp(bi.m + b, N - 1 - b + a));
  } else {
    for (int a = 0; a < N - 1; ++a) {
      put(out, dst, a, src, a, p.d(bi.m + N - 1 + a));
      if (a + 1 < N - 1) put(out, dst, a, src, a + 1, -RingMatrix<F>::identity(ring, p.dim(bi.m + N + a)));
    }
  }
  return out;
}

template <class F>
Support f_support(const NComplex<F>& p) {
  const int N = p.N();
  if (p.periodic()) {
    if (p.support().period % N != 0)
      throw Error("f_obj: period " + std::to_string(p.support().period) + " is not divisible by N = " +
                  std::to_string(N));
    return Support::cyclic(2 * p.support().period / N);
  }
  if (p.support().empty()) return Support::bounded(0, -1);
  int lo = 2 * floor_div(p.support().lo, N) - 3, hi = 2 * floor_div(p.support().hi, N) + 3;
  int first = hi + 1, last = lo - 1;
  for (int i = lo; i <= hi; ++i)
    if (f_blocks(p, i).total()) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  return Support::bounded(first, last);
}

}  // namespace detail

/// F(P): an ordinary complex of standard-form projective representations of
/// the line quiver with N - 1 vertices.
template <class F>
RepComplex<F> f_obj(const NComplex<F>& p) {
  auto rep = validate(p);
  if (!rep.ok) throw Error("f_obj: " + rep.message);
  Support s = detail::f_support(p);
  std::vector<LineRep<F>> terms;
  for (std::size_t k = 0; k < s.size(); ++k) terms.push_back(detail::f_term(p, s.degree(k)));
  RepComplex<F> out(p.N() - 1, p.ring(), s, terms);
  for (std::size_t k = 0; k < s.size(); ++k) {
    int i = s.degree(k);
    out.set_d(i, detail::from_top(detail::f_term(p, i), detail::f_term(p, i + 1), detail::f_diff_top(p, i)));
  }
  return out;
}

/// F on a chain map: blockwise diagonal, ascending in both parities.
template <class F>
RepChainMap<F> f_mor(const ChainMapN<F>& f) {
  auto rep = validate(f);
  if (!rep.ok) throw Error("f_mor: " + rep.message);
  const auto& Q = f.source();
  const auto& P = f.target();
  const int N = Q.N();
  RepChainMap<F> out(f_obj(Q), f_obj(P));
  DegreeRange w = out.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto b = f_block(N, i);
    auto src = detail::f_blocks(Q, i), dst = detail::f_blocks(P, i);
    RingMatrix<F> top(Q.ring(), dst.total(), src.total());
    for (int a = 0; a < N - 1; ++a) detail::put(top, dst, a, src, a, f.at(b.first + a));
    out.set(i, detail::from_top(detail::f_term(Q, i), detail::f_term(P, i), top));
  }
  return out;
}

/// t^i: F(Q)^i -> F(P)^{i-1} built from an N-level witness of f ~ 0.
template <class F>
RepHomotopy<F> transport_formula(const ChainMapN<F>& f, const HomotopyWitness<F>& w) {
  const auto& Q = f.source();
  const auto& P = f.target();
  const int N = Q.N();
  const auto& ring = Q.ring();
  auto fq = f_obj(Q), fp = f_obj(P);
  RepHomotopy<F> t;
  RepChainMap<F> frame(fq, fp);
  t.periodic = frame.periodic();
  t.period = t.periodic ? fq.support().period : 0;
  auto s = [&](int k) { return w.at(k, ring, P.dim(k - N + 1), Q.dim(k)); };
  DegreeRange win = frame.window();
  for (int i = win.lo; i <= win.hi + 1; ++i) {
    auto b = f_block(N, i);
    const int m = b.m;
    auto src = detail::f_blocks(Q, i), dst = detail::f_blocks(P, i - 1);
    RingMatrix<F> top(ring, dst.total(), src.total());
    if (b.even) {
      for (int a = 0; a < N - 1; ++a)
        for (int c = a; c < N - 1; ++c) {
          RingMatrix<F> acc(ring, dst.sizes[a], src.sizes[c]);
          for (int u = c; u <= a + N - 2; ++u) {
            auto su = s(m + u);
            if (su.is_zero()) continue;
            acc += P.comp(m + u - N + 1, N - 2 - u + a) * su * Q.comp(m + c, u - c);
          }
          detail::put(top, dst, a, src, c, acc);
        }
    } else {
      for (int a = 0; a < N - 1; ++a) detail::put(top, dst, a, src, a, s(m + N - 1 + a));
    }
    if (top.is_zero()) continue;
    int key = t.periodic ? floor_mod(i, t.period) : i;
    t.h[key] = detail::from_top(detail::f_term(Q, i), detail::f_term(P, i - 1), top);
  }
  return t;
}

/// A rep-level homotopy for F(f) from a witness of f ~ 0, checked by
/// evaluation of F(f) = d t + t d.
template <class F>
Checked<RepHomotopy<F>> transport_homotopy(const ChainMapN<F>& f, const HomotopyWitness<F>& w) {
  if (!maps_equal(reconstruct(f.source(), f.target(), w), f))
    throw Error("transport_homotopy: witness does not reconstruct f");
  auto ff = f_mor(f);
  auto t = transport_formula(f, w);
  Checked<RepHomotopy<F>> out{t};
  if (maps_equal(boundary(ff.source(), ff.target(), t), ff)) return out;
  out.formula_ok = false;
  out.discrepancy = "transported homotopy does not satisfy F(f) = d t + t d";
  auto alt = rep_null_homotopy(ff);
  if (!alt) throw Error("transport_homotopy: F(f) is not null-homotopic");
  out.value = *alt;
  return out;
}

/// s from the entries of a rep homotopy t for F(f).
template <class F>
HomotopyWitness<F> faithful_formula(const ChainMapN<F>& f, const RepHomotopy<F>& t) {
  const auto& Q = f.source();
  const auto& P = f.target();
  const int N = Q.N();
  const auto& ring = Q.ring();
  auto fq = f_obj(Q), fp = f_obj(P);
  HomotopyWitness<F> w;
  w.periodic = Q.periodic() && P.periodic();
  w.period = w.periodic ? Q.support().period : 0;
  auto entry = [&](int i, int a, int b) {
    auto rows = detail::f_blocks(P, i - 1), cols = detail::f_blocks(Q, i);
    auto top = t.at(i, fq, fp)[N - 2];
    return detail::top_block(top, rows, cols, a, b);
  };
  int rlo, rhi;
  if (w.periodic) {
    rlo = 0;
    rhi = Q.support().period / N - 1;
  } else {
    if (Q.support().empty()) return w;
    rlo = floor_div(Q.support().lo, N) - 1;
    rhi = floor_div(Q.support().hi, N) + 1;
  }
  for (int r = rlo; r <= rhi; ++r) {
    const int m = N * r;
    std::vector<RingMatrix<F>> s(N);
    s[N - 1] = entry(2 * r + 1, 0, 0);
    s[N - 2] = entry(2 * r, 0, N - 2);
    for (int k = m; k <= m + N - 3; ++k) {
      int a = k - m + 1;
      RingMatrix<F> acc = entry(2 * r - 1, a, a);
      for (int kap = a; kap <= N - 2; ++kap)
        acc += P.d(k - N) * entry(2 * r - 1, a - 1, kap) * Q.comp(k, kap - a);
      s[k - m] = acc;
    }
    for (int c = 0; c < N; ++c)
      if (!s[c].is_zero()) w.s[w.periodic ? floor_mod(m + c, w.period) : m + c] = s[c];
  }
  return w;
}

/// An N-level witness for f ~ 0 read off a rep homotopy for F(f); verified,
/// with the direct solver as fallback.
template <class F>
Checked<HomotopyWitness<F>> faithful_witness(const ChainMapN<F>& f, const RepHomotopy<F>& t) {
  auto ff = f_mor(f);
  if (!maps_equal(boundary(ff.source(), ff.target(), t), ff))
    throw Error("faithful_witness: t is not a homotopy for F(f)");
  Checked<HomotopyWitness<F>> out{faithful_formula(f, t)};
  if (maps_equal(reconstruct(f.source(), f.target(), out.value), f)) return out;
  out.formula_ok = false;
  out.discrepancy = "witness read off t fails the reconstruction identity";
  auto alt = null_homotopy(f);
  if (!alt) throw Error("faithful_witness: f is not null-homotopic although F(f) is");
  out.value = *alt;
  return out;
}

/// A chain map f: Q -> P read off the top-vertex entries of phi.
template <class F>
ChainMapN<F> full_formula(const NComplex<F>& Q, const NComplex<F>& P, const RepChainMap<F>& phi) {
  const int N = Q.N();
  const auto& ring = Q.ring();
  ChainMapN<F> f(Q, P);
  auto beta = [&](int i, int a, int b) {
    auto rows = detail::f_blocks(P, i), cols = detail::f_blocks(Q, i);
    return detail::top_block(phi.at(i)[N - 2], rows, cols, a, b);
  };
  int rlo, rhi;
  if (f.periodic()) {
    rlo = 0;
    rhi = Q.support().period / N - 1;
  } else {
    DegreeRange w = f.window();
    if (w.lo > w.hi) return f;
    rlo = floor_div(w.lo, N);
    rhi = floor_div(w.hi, N);
  }
  for (int r = rlo; r <= rhi; ++r) {
    const int m = N * r;
    for (int c = 0; c <= N - 2; ++c) {
      RingMatrix<F> acc(ring, P.dim(m + c), Q.dim(m + c));
      for (int k = c + 2; k <= N - 1; ++k) acc += beta(2 * r - 1, c + 1, k - 1) * Q.comp(m + c, k - c - 2);
      for (int k = 1; k <= c + 1; ++k)
        acc += P.comp(m + k - 1, c + 1 - k) * beta(2 * r, k - 1, N - 2) * Q.comp(m + c, N - 2 - c);
      f.set(m + c, acc);
    }
    RingMatrix<F> last(ring, P.dim(m + N - 1), Q.dim(m + N - 1));
    for (int k = 1; k <= N - 1; ++k) last += beta(2 * r + 1, 0, k - 1) * Q.comp(m + N - 1, k - 1);
    f.set(m + N - 1, last);
  }
  return f;
}

/// f with F(f) ~ phi and the homotopy witnessing it.
template <class F>
struct FullWitness {
  ChainMapN<F> f;
  RepHomotopy<F> t;
};

/// Chain map f: Q -> P with F(f) homotopic to phi; printed formula first,
/// then a joint solve for (f, t) with F(f) - (d t + t d) = phi.
template <class F>
Checked<FullWitness<F>> full_witness(const NComplex<F>& Q, const NComplex<F>& P, const RepChainMap<F>& phi) {
  auto rep = validate(phi);
  if (!rep.ok) throw Error("full_witness: phi is not a chain map: " + rep.message);
  auto fq = f_obj(Q), fp = f_obj(P);
  std::string why;
  {
    auto f = full_formula(Q, P, phi);
    if (validate(f).ok) {
      auto diff = add_maps(transfer(f_mor(f), fq, fp), transfer(phi, fq, fp), true);
      if (auto t = rep_null_homotopy(diff)) return {{f, *t}};
      why = "F(f) is not homotopic to phi for the f read off phi";
    } else {
      why = "the f read off phi is not a chain map";
    }
  }
  if (Q.periodic() != P.periodic()) throw Error("full_witness: mixed supports");
  auto [q, p] = align(Q, P);
  auto [aq, ap] = align(f_obj(q), f_obj(p));
  auto basis = chain_map_basis(q, p);
  RepHomSetup<F> setup(aq, ap);
  auto h = setup.data();
  const auto& K = q.ring().field;
  Matrix<F> sys(K, h.space.dim(), basis.size() + h.boundaries.cols());
  for (std::size_t k = 0; k < basis.size(); ++k)
    sys.set_block(0, k, flatten(setup.maps(), setup.coords(transfer(f_mor(basis[k]), aq, ap))));
  if (h.boundaries.cols()) sys.set_block(0, basis.size(), -h.boundaries);
  auto sol = solve(sys, flatten(setup.maps(), setup.coords(transfer(phi, aq, ap))));
  if (!sol) throw Error("full_witness: phi is not homotopic to the image of any chain map");
  ChainMapN<F> f(q, p);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& c = (*sol)(k, 0);
    if (K.is_zero(c)) continue;
    DegreeRange w = f.window();
    for (int i = w.lo; i <= w.hi; ++i) f.set(i, f.at(i) + basis[k].at(i).scaled(c));
  }
  auto diff = add_maps(transfer(f_mor(f), aq, ap), transfer(phi, aq, ap), true);
  auto t = rep_null_homotopy(diff);
  if (!t) throw Error("full_witness: solver result failed verification");
  return {{f, *t}, false, why};
}

/// (C[1])^i = C^{i+1}, d[1] = -d.
template <class F>
RepComplex<F> shift(const RepComplex<F>& c) {
  const auto& s = c.support();
  Support t = s.periodic || s.empty() ? s : Support::bounded(s.lo - 1, s.hi - 1);
  std::vector<LineRep<F>> terms;
  for (std::size_t k = 0; k < t.size(); ++k) terms.push_back(c.term(t.degree(k) + 1));
  RepComplex<F> out(c.n(), c.ring(), t, terms);
  for (std::size_t k = 0; k < t.size(); ++k) {
    int i = t.degree(k);
    auto d = c.d(i + 1);
    for (auto& m : d) m = -m;
    out.set_d(i, d);
  }
  return out;
}

template <class F>
struct SuspensionCompat {
  RepChainMap<F> alpha;
  RepChainMap<F> beta;
  RepHomotopy<F> s;
  bool alpha_beta_identity = false;
  bool homotopy_identity = false;
  bool formula_ok = true;
  std::string discrepancy;
};

namespace detail {

/// Blocks of F(Sigma P)^i at the top vertex, each split into its N - 1 summands.
template <class F>
Blocks sigma_summands(const NComplex<F>& p, int first) {
  const int N = p.N();
  Blocks b;
  for (int k = 0; k < N - 1; ++k)
    for (int c = 0; c < N - 1; ++c) b.sizes.push_back(p.dim(first + k + 1 + c));
  return b;
}

}  // namespace detail

/// alpha: F(Sigma P) -> F(P)[1], beta the other way and s with
/// beta alpha - 1 = d s + s d, all transcribed and then checked.
template <class F>
SuspensionCompat<F> suspension_compat(const NComplex<F>& p) {
  auto rep = validate(p);
  if (!rep.ok) throw Error("suspension_compat: " + rep.message);
  const int N = p.N();
  const auto& ring = p.ring();
  auto sp = sigma(p);
  auto fs = f_obj(sp);
  auto fp1 = shift(f_obj(p));
  SuspensionCompat<F> out{RepChainMap<F>(fs, fp1), RepChainMap<F>(fp1, fs), {}};
  out.s.periodic = out.alpha.periodic();
  out.s.period = out.s.periodic ? fs.support().period : 0;
  const std::size_t S = static_cast<std::size_t>(N - 1);
  DegreeRange w = out.alpha.window();
  for (int i = w.lo; i <= w.hi + 1; ++i) {
    auto b = f_block(N, i);
    // Column blocks of F(Sigma P)^i: block k is (Sigma P)^{first+k}, summands P^{first+k+1+c}.
    auto sig = detail::sigma_summands(p, b.first);
    auto tgt = detail::f_blocks(p, i + 1);
    RingMatrix<F> alpha(ring, tgt.total(), sig.total()), beta(ring, sig.total(), tgt.total());
    for (std::size_t k = 0; k < S; ++k) {
      const int kk = static_cast<int>(k) + 1;
      if (b.even) {
        const int m = b.m;
        for (std::size_t rho = 1; rho <= k + 1; ++rho)
          for (std::size_t c = 0; c < S; ++c) {
            int len = N - kk - 2 - static_cast<int>(c) + static_cast<int>(rho);
            if (len < 0) continue;
            detail::put(alpha, tgt, rho - 1, sig, k * S + c, p.comp(m + kk + static_cast<int>(c), len));
          }
        detail::put(beta, sig, k * S + S - 1, tgt, k, RingMatrix<F>::identity(ring, tgt.sizes[k]));
      } else {
        detail::put(alpha, tgt, k, sig, k * S, RingMatrix<F>::identity(ring, tgt.sizes[k]));
        for (std::size_t c = 0; k + c < S; ++c)
          detail::put(beta, sig, k * S + c, tgt, k + c, RingMatrix<F>::identity(ring, tgt.sizes[k + c]));
      }
    }
    auto src_term = detail::f_term(sp, i), tgt_term = fp1.term(i);
    if (i <= w.hi) {
      out.alpha.set(i, detail::from_top(src_term, tgt_term, alpha));
      out.beta.set(i, detail::from_top(tgt_term, src_term, beta));
    }
    if (b.even) {
      // s^i: F(Sigma P)^i -> F(Sigma P)^{i-1}; block (a, c) is psi_{c-a+1}.
      auto prev = detail::sigma_summands(p, f_block(N, i - 1).first);
      RingMatrix<F> s(ring, prev.total(), sig.total());
      for (std::size_t a = 0; a < S; ++a)
        for (std::size_t c = a; c < S; ++c) {
          std::size_t kp = c - a + 1;
          for (std::size_t e = 0; e + kp + 1 <= S; ++e)
            detail::put(s, prev, a * S + kp + e, sig, c * S + e, -RingMatrix<F>::identity(ring, sig.sizes[c * S + e]));
        }
      if (!s.is_zero()) {
        int key = out.s.periodic ? floor_mod(i, out.s.period) : i;
        out.s.h[key] = detail::from_top(src_term, detail::f_term(sp, i - 1), s);
      }
    }
  }
  out.alpha_beta_identity = maps_equal(compose(out.alpha, out.beta), identity_map(fp1));
  auto ba = add_maps(compose(out.beta, out.alpha), identity_map(fs), true);
  out.homotopy_identity = validate(out.alpha).ok && validate(out.beta).ok && maps_equal(boundary(fs, fs, out.s), ba);
  if (out.alpha_beta_identity && out.homotopy_identity) return out;
  out.formula_ok = false;
  if (!validate(out.alpha).ok) out.discrepancy = "alpha is not a chain map: " + validate(out.alpha).message;
  else if (!validate(out.beta).ok) out.discrepancy = "beta is not a chain map: " + validate(out.beta).message;
  else if (!out.alpha_beta_identity) out.discrepancy = "alpha beta is not the identity";
  else out.discrepancy = "beta alpha - 1 is not the boundary of the transcribed s";
  if (!out.alpha_beta_identity || !validate(out.alpha).ok || !validate(out.beta).ok) {
    auto eq = find_rep_equivalence(fs, fp1);
    if (!eq) throw Error("suspension_compat: F(Sigma P) and F(P)[1] are not homotopy equivalent");
    out.alpha = eq->first;
    out.beta = eq->second;
    out.alpha_beta_identity = maps_equal(compose(out.alpha, out.beta), identity_map(fp1));
    ba = add_maps(compose(out.beta, out.alpha), identity_map(fs), true);
  }
  auto t = rep_null_homotopy(ba);
  if (!t) throw Error("suspension_compat: beta alpha - 1 is not null-homotopic");
  out.s = *t;
  out.homotopy_identity = maps_equal(boundary(fs, fs, out.s), ba);
  return out;
}

/// Stalk complex R in degree d.
template <class F>
NComplex<F> stalk(int N, const CoeffRing<F>& ring, int d) {
  return disk(N, ring, d, 1, 1);
}

struct GeneratorImage {
  std::string source;
  std::string expected;
  bool isomorphic = false;
  int degree = 0;
};

/// Two-term complex e_lambda(i) -> e_lambda(i - 1) (1-based vertices) in degrees deg, deg+1.
template <class F>
RepComplex<F> two_term(const CoeffRing<F>& ring, int n, int i, int deg) {
  auto a = e_lambda(ring, n, i, 1), b = e_lambda(ring, n, i - 1, 1);
  RepComplex<F> c(n, ring, Support::bounded(deg, deg + 1), {a, b});
  RepMap<F> m = zero_rep_map(a, b);
  for (int v = i - 1; v < n; ++v) m[v] = RingMatrix<F>::identity(ring, 1);
  c.set_d(deg, m);
  return c;
}

/// F on the generators, compared up to homotopy with the expected one- and
/// two-term complexes. The expected complex is placed at each F-degree in
/// the image's support and the first match is reported.
template <class F>
std::vector<GeneratorImage> generator_images(int N, const CoeffRing<F>& ring) {
  if (N < 2) throw Error("generator_images: N must be >= 2");
  const int n = N - 1;
  std::vector<GeneratorImage> out;
  auto match = [&](const RepComplex<F>& img, auto make) {
    GeneratorImage g;
    DegreeRange w = img.window();
    for (int d = w.lo; d <= w.hi && !g.isomorphic; ++d)
      if (find_rep_equivalence(img, make(d))) {
        g.isomorphic = true;
        g.degree = d;
      }
    return g;
  };
  {
    auto g = match(f_obj(theta(stalk(N, ring, 0), -(N - 1))),
                   [&](int d) { return stalk(e_lambda(ring, n, 1, 1), d); });
    g.source = "Theta^" + std::to_string(N - 1) + " R";
    g.expected = "R_1";
    out.push_back(g);
  }
  {
    auto g = match(f_obj(sigma(theta(stalk(N, ring, 0), -(N - 2)))),
                   [&](int d) { return stalk(e_lambda(ring, n, n, 1), d); });
    g.source = "Sigma Theta^" + std::to_string(N - 2) + " R";
    g.expected = "R_" + std::to_string(n);
    out.push_back(g);
  }
  if (N >= 3) {
    auto g = match(f_obj(theta(stalk(N, ring, 0), -(N - 3))), [&](int d) { return two_term(ring, n, n, d); });
    g.source = "Theta^" + std::to_string(N - 3) + " R";
    g.expected = "R_" + std::to_string(n) + " -> R_" + std::to_string(n - 1);
    out.push_back(g);
  }
  return out;
}

}  // namespace ncx
