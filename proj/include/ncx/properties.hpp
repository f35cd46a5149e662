#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "acyclicity.hpp"
#include "functor_f.hpp"
#include "io.hpp"
#include "random.hpp"

namespace ncx {

struct TrialOutcome {
  bool ok = true;
  bool fallback = false;
  std::string message;
  std::string detail;
  json counterexample;
};

struct CampaignConfig {
  std::string property;
  std::uint64_t seed = 0;
  int trials = 1;
  std::vector<int> Ns{2, 3, 4, 5};
  std::vector<RingDescriptor> rings{{RingKind::prime_field, 2, 1}, {RingKind::prime_field, 3, 1}, {RingKind::rationals, 2, 1}};
  RandomBounds bounds{2, 0, 3};
};

struct CampaignReport {
  std::string property;
  int trials = 0;
  int passed = 0;
  int fallbacks = 0;
  int first_failure = -1;
  std::string message;
  json counterexample;
  json results = json::array();
  bool ok() const { return passed == trials; }
};

inline std::vector<std::string> property_names() {
  return {"transport",  "full-faithfulness", "faithful", "fullness",  "exactness",      "suspension",
          "homology-vanishing", "disk-contractible", "null-homotopy", "roundtrip", "generator"};
}

namespace detail {

template <class F>
RandomBounds trial_bounds(int N, const RandomBounds& b, int default_width) {
  RandomBounds r = b;
  if (r.max_width <= 0) r.max_width = default_width;
  r.max_width = std::min(r.max_width, 3 * N);
  return r;
}

template <class F>
TrialOutcome transport_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0) {
  auto b = trial_bounds<F>(N, b0, 3 * N);
  auto q = random_ncomplex(N, ring, rng, b);
  auto p = random_ncomplex(N, ring, rng, b);
  auto [f, w] = random_null_homotopic(q, p, rng);
  auto t = transport_homotopy(f, w);
  TrialOutcome o;
  o.fallback = !t.formula_ok;
  o.message = t.discrepancy;
  if (!maps_equal(boundary(f_obj(f.source()), f_obj(f.target()), t.value), f_mor(f))) {
    o.ok = false;
    o.message = "F(f) differs from d t + t d";
    o.counterexample = chain_map_to_json(f);
  }
  return o;
}

template <class F>
TrialOutcome full_faithfulness_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0) {
  auto b = trial_bounds<F>(N, b0, 2 * N);
  auto q = random_ncomplex(N, ring, rng, b);
  auto p = random_ncomplex(N, ring, rng, b);
  auto lhs = hom_space_dim(q, p).hom_k;
  auto rhs = rep_hom_space_dim(f_obj(q), f_obj(p)).hom_k;
  TrialOutcome o;
  o.detail = "hom_K = " + std::to_string(lhs) + ", hom_K after F = " + std::to_string(rhs);
  if (lhs != rhs) {
    o.ok = false;
    o.message = "hom_K(Q,P) = " + std::to_string(lhs) + " but hom_K(F(Q),F(P)) = " + std::to_string(rhs);
    o.counterexample = {{"Q", complex_to_json(q)}, {"P", complex_to_json(p)}};
  }
  return o;
}

template <class F>
TrialOutcome faithful_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0) {
  auto b = trial_bounds<F>(N, b0, 2 * N);
  auto q = random_ncomplex(N, ring, rng, b);
  auto p = random_ncomplex(N, ring, rng, b);
  auto [f, w] = random_null_homotopic(q, p, rng);
  auto t = transport_homotopy(f, w);
  auto s = faithful_witness(f, t.value);
  TrialOutcome o;
  o.fallback = !s.formula_ok || !t.formula_ok;
  o.message = s.discrepancy;
  if (!maps_equal(reconstruct(f.source(), f.target(), s.value), f)) {
    o.ok = false;
    o.message = "recovered witness does not reconstruct f";
    o.counterexample = chain_map_to_json(f);
  }
  return o;
}

/// phi = F(g) + boundary of a random rep homotopy, so phi is always in the
/// homotopy class of an image map.
template <class F>
TrialOutcome fullness_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0) {
  auto b = trial_bounds<F>(N, b0, 2 * N);
  auto q = random_ncomplex(N, ring, rng, b);
  auto p = random_ncomplex(N, ring, rng, b);
  auto g = random_chain_map(q, p, rng);
  auto fq = f_obj(g.source()), fp = f_obj(g.target());
  RepHomotopy<F> h;
  DegreeRange w = fq.window();
  for (int i = w.lo; i <= w.hi; ++i) {
    RepMap<F> m;
    bool any = false;
    auto src = fq.term(i), dst = fp.term(i - 1);
    for (int v = 0; v < fq.n(); ++v) m.push_back(RingMatrix<F>(ring, dst.vdims[v], src.vdims[v]));
    // A random rep morphism between standard-form terms: the top-vertex matrix
    // with entries below the staircase cleared, restricted to each vertex.
    int top = fq.n() - 1;
    auto mt = random_matrix(ring, dst.vdims[top], src.vdims[top], rng);
    auto level = [](const LineRep<F>& r, std::size_t k) {
      int v = 0;
      while (k >= r.vdims[static_cast<std::size_t>(v)]) ++v;
      return v;
    };
    std::vector<typename F::value_type> zero(static_cast<std::size_t>(ring.trunc), ring.field.zero());
    for (std::size_t r = 0; r < mt.rows(); ++r)
      for (std::size_t c = 0; c < mt.cols(); ++c)
        if (level(dst, r) > level(src, c)) mt.set_entry(r, c, zero);
    for (int v = 0; v <= top; ++v) m[v] = mt.block(0, 0, dst.vdims[v], src.vdims[v]);
    any = !src.is_zero() && !dst.is_zero();
    if (any && is_rep_morphism(src, dst, m)) h.h[i] = m;
  }
  auto phi = add_maps(f_mor(g), boundary(fq, fp, h));
  auto res = full_witness(g.source(), g.target(), phi);
  TrialOutcome o;
  o.fallback = !res.formula_ok;
  o.message = res.discrepancy;
  auto diff = add_maps(transfer(f_mor(res.value.f), fq, fp), transfer(phi, fq, fp), true);
  if (!validate(res.value.f).ok || !maps_equal(diff, transfer(boundary(fq, fp, res.value.t), fq, fp))) {
    o.ok = false;
    o.message = "returned f does not satisfy F(f) - phi = d t + t d";
    o.counterexample = chain_map_to_json(g);
  }
  return o;
}

/// Alternates N-exact constructions with uncontrolled complexes.
template <class F>
std::pair<NComplex<F>, bool> exactness_instance(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b,
                                                int trial) {
  switch (trial % 4) {
    case 0:
      return {random_disk_sum(N, ring, rng, b, 0, true), true};
    case 1: {
      RandomBounds half = b;
      half.max_width = std::max(1, b.max_width / 2);
      auto x = random_disk_sum(N, ring, rng, half);
      auto y = direct_sum(x, random_disk_sum(N, ring, rng, half, 0, true));
      // x -> x + D is a quasi-isomorphism; so is its scrambled cone's source map.
      ChainMapN<F> f(x, y);
      DegreeRange w = f.window();
      for (int i = w.lo; i <= w.hi; ++i)
        if (x.dim(i)) f.set(i, RingMatrix<F>::identity(ring, y.dim(i)).block(0, 0, y.dim(i), x.dim(i)));
      return {scramble(cone(f), rng), true};
    }
    case 2:
      if (ring.trunc > 1 && ring.trunc % N == 0 && rng.coin()) return {x_power_complex(N, ring, ring.trunc / N), true};
      [[fallthrough]];
    default:
      return {random_ncomplex(N, ring, rng, b), false};
  }
}

template <class F>
TrialOutcome exactness_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0, int trial) {
  auto b = trial_bounds<F>(N, b0, 2 * N);
  auto [x, known_exact] = exactness_instance(N, ring, rng, b, trial);
  if (x.periodic() && x.support().period % N != 0) x = inflate(x, std::lcm(x.support().period, N));
  bool n_exact = is_n_exact(x);
  bool classical = is_classically_acyclic(f_obj(x));
  TrialOutcome o;
  if (known_exact && !n_exact) {
    o.ok = false;
    o.message = "an N-exact construction has nonzero homology";
  } else if (n_exact != classical) {
    o.ok = false;
    o.message = std::string("is_n_exact = ") + (n_exact ? "true" : "false") + " but F(p) is " +
                (classical ? "" : "not ") + "classically acyclic";
  }
  if (!o.ok) o.counterexample = complex_to_json(x);
  return o;
}

template <class F>
TrialOutcome suspension_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0) {
  auto b = trial_bounds<F>(N, b0, 2 * N);
  auto p = random_ncomplex(N, ring, rng, b);
  auto sc = suspension_compat(p);
  auto fs = f_obj(sigma(p));
  auto fp1 = shift(f_obj(p));
  TrialOutcome o;
  o.fallback = !sc.formula_ok;
  o.message = sc.discrepancy;
  bool ab = validate(sc.alpha).ok && validate(sc.beta).ok &&
            maps_equal(compose(sc.alpha, sc.beta), identity_map(fp1));
  bool ba = maps_equal(add_maps(compose(sc.beta, sc.alpha), identity_map(fs), true), boundary(fs, fs, sc.s));
  if (!ab || !ba) {
    o.ok = false;
    o.message = !ab ? "alpha beta is not the identity" : "beta alpha - 1 is not d s + s d";
    o.counterexample = complex_to_json(p);
  }
  return o;
}

template <class F>
bool h1_vanishes(const NComplex<F>& x) {
  auto h = homology(x);
  for (const auto& [k, q] : h.entries)
    if (k.second == 1 && !q.is_zero()) return false;
  return true;
}

/// Random complexes conditioned on H_1 = 0 by rejection, with exact
/// constructions as a fallback supply.
template <class F>
TrialOutcome homology_vanishing_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0) {
  auto b = trial_bounds<F>(N, b0, 2 * N);
  NComplex<F> x;
  bool found = false;
  for (int attempt = 0; attempt < 40 && !found; ++attempt) {
    x = random_ncomplex(N, ring, rng, b);
    found = h1_vanishes(x);
  }
  if (!found) {
    x = rng.coin() || ring.trunc == 1 ? random_disk_sum(N, ring, rng, b, 0, true)
                                      : x_power_complex(N, ring, (ring.trunc + N - 1) / N);
    found = h1_vanishes(x);
  }
  TrialOutcome o;
  if (found && !homology(x).is_zero()) {
    o.ok = false;
    o.message = "H_1 vanishes but some H_r does not";
    o.counterexample = complex_to_json(x);
  }
  return o;
}

template <class F>
TrialOutcome disk_trial(int N, const CoeffRing<F>& ring, Rng& rng) {
  int j = rng.range(-4, 4);
  auto rank = static_cast<std::size_t>(rng.range(1, 3));
  auto d = disk(N, ring, j, N, rank);
  TrialOutcome o;
  if (!is_null_homotopic(identity_map(d)) || !homology(d).is_zero()) {
    o.ok = false;
    o.message = "D^j_N is not contractible";
    o.counterexample = complex_to_json(d);
  }
  return o;
}

template <class F>
TrialOutcome null_homotopy_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0) {
  auto b = trial_bounds<F>(N, b0, 2 * N);
  auto x = random_ncomplex(N, ring, rng, b);
  auto y = random_ncomplex(N, ring, rng, b);
  auto [f, w] = random_null_homotopic(x, y, rng);
  TrialOutcome o;
  auto s = null_homotopy(f);
  if (!s || !maps_equal(reconstruct(f.source(), f.target(), *s), f)) {
    o.ok = false;
    o.message = "solver missed a null-homotopic map";
    o.counterexample = chain_map_to_json(f);
  }
  return o;
}

template <class F>
TrialOutcome roundtrip_trial(int N, const CoeffRing<F>& ring, Rng& rng, const RandomBounds& b0) {
  auto x = random_ncomplex(N, ring, rng, trial_bounds<F>(N, b0, 2 * N));
  auto text = canonical(complex_to_json(x));
  TrialOutcome o;
  auto y = complex_from_json(ring, parse_document(text));
  if (!(y == x) || canonical(complex_to_json(y)) != text) {
    o.ok = false;
    o.message = "serialization is not a canonical round trip";
    o.counterexample = complex_to_json(x);
  }
  return o;
}

template <class F>
TrialOutcome generator_trial(int N, const CoeffRing<F>& ring) {
  TrialOutcome o;
  if (N < 3) return o;
  for (const auto& g : generator_images(N, ring))
    if (!g.isomorphic) {
      o.ok = false;
      o.message = "F(" + g.source + ") is not isomorphic to " + g.expected;
      o.counterexample = {{"N", N}, {"ring", ring_to_json(describe(ring))}};
    }
  return o;
}

template <class F>
TrialOutcome run_trial(const std::string& property, int N, const CoeffRing<F>& ring, Rng& rng,
                       const RandomBounds& b, int trial) {
  if (property == "transport") return transport_trial(N, ring, rng, b);
  if (property == "full-faithfulness") return full_faithfulness_trial(N, ring, rng, b);
  if (property == "faithful") return faithful_trial(N, ring, rng, b);
  if (property == "fullness") return fullness_trial(N, ring, rng, b);
  if (property == "exactness") return exactness_trial(N, ring, rng, b, trial);
  if (property == "suspension") return suspension_trial(N, ring, rng, b);
  if (property == "homology-vanishing") return homology_vanishing_trial(N, ring, rng, b);
  if (property == "disk-contractible") return disk_trial(N, ring, rng);
  if (property == "null-homotopy") return null_homotopy_trial(N, ring, rng, b);
  if (property == "roundtrip") return roundtrip_trial(N, ring, rng, b);
  if (property == "generator") return generator_trial(N, ring);
  throw Error("unknown property '" + property + "'");
}

}  // namespace detail

/// Worker count: NCX_THREADS if set, else hardware concurrency.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NCX_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

/// Trial t uses N = Ns[t mod |Ns|], ring = rings[(t / |Ns|) mod |rings|] and
/// its own Rng(seed, t); the report is independent of scheduling.
inline TrialOutcome campaign_trial(const CampaignConfig& c, int t) {
  int N = c.Ns[static_cast<std::size_t>(t) % c.Ns.size()];
  const auto& rd = c.rings[(static_cast<std::size_t>(t) / c.Ns.size()) % c.rings.size()];
  Rng rng(c.seed, static_cast<std::uint64_t>(t));
  TrialOutcome o;
  try {
    o = with_ring(rd, [&](const auto& ring) { return detail::run_trial(c.property, N, ring, rng, c.bounds, t); });
  } catch (const Error& e) {
    o.ok = false;
    o.message = e.what();
  }
  if (!o.ok && !o.counterexample.is_null()) {
    o.counterexample = {{"schema_version", kSchemaVersion}, {"kind", "counterexample"}, {"property", c.property},
                        {"seed", c.seed},  {"trial", t}, {"N", N}, {"ring", ring_to_json(rd)},
                        {"message", o.message}, {"input", o.counterexample}};
  }
  return o;
}

inline CampaignReport run_campaign(const CampaignConfig& c) {
  if (c.trials < 1) throw Error("campaign: trials must be >= 1");
  if (c.Ns.empty() || c.rings.empty()) throw Error("campaign: empty N or ring list");
  auto names = property_names();
  if (std::find(names.begin(), names.end(), c.property) == names.end())
    throw Error("unknown property '" + c.property + "'");
  std::vector<TrialOutcome> out(static_cast<std::size_t>(c.trials));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int t = next++; t < c.trials; t = next++) out[static_cast<std::size_t>(t)] = campaign_trial(c, t);
  };
  unsigned n = std::min<unsigned>(thread_count(), static_cast<unsigned>(c.trials));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  CampaignReport r;
  r.property = c.property;
  r.trials = c.trials;
  for (int t = 0; t < c.trials; ++t) {
    const auto& o = out[static_cast<std::size_t>(t)];
    json line = {{"trial", t},
                 {"N", c.Ns[static_cast<std::size_t>(t) % c.Ns.size()]},
                 {"ring", ring_to_json(c.rings[(static_cast<std::size_t>(t) / c.Ns.size()) % c.rings.size()])},
                 {"ok", o.ok}};
    if (!o.detail.empty()) line["detail"] = o.detail;
    if (o.fallback) line["fallback"] = o.message;
    if (!o.ok) line["message"] = o.message;
    r.results.push_back(std::move(line));
    if (o.fallback) ++r.fallbacks;
    if (o.ok) {
      ++r.passed;
    } else if (r.first_failure < 0) {
      r.first_failure = t;
      r.message = o.message;
      r.counterexample = o.counterexample;
    }
  }
  return r;
}

}  // namespace ncx
