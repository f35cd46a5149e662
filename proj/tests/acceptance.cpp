// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "classical_oracle.hpp"
#include "test_util.hpp"

using namespace ncx;
using testutil::gf;
using testutil::qq;
using GF = PrimeField;
using QQ = RationalField;

namespace {

const std::string kSource = NCX_SOURCE_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  bool ok = true;
  std::string info;
  void fail(const std::string& why) {
    if (ok) info = why;
    ok = false;
  }
};

/// Trial t cycles N over 2..5 and the ring over GF(2), GF(3), Q.
template <class Fn>
void over_rings(int trials, Fn&& fn) {
  const int Ns[] = {2, 3, 4, 5};
  for (int t = 0; t < trials; ++t) {
    int N = Ns[t % 4];
    switch ((t / 4) % 3) {
      case 0: fn(t, N, gf(2)); break;
      case 1: fn(t, N, gf(3)); break;
      default: fn(t, N, qq()); break;
    }
  }
}

template <class F>
RepMap<F> rep_sum(const RepMap<F>& a, const RepMap<F>& b) {
  RepMap<F> out = a;
  for (std::size_t v = 0; v < a.size(); ++v) out[v] = a[v] + b[v];
  return out;
}

template <class F>
RepMap<F> rep_mul(const RepMap<F>& g, const RepMap<F>& f) {
  RepMap<F> out;
  for (std::size_t v = 0; v < f.size(); ++v) out.push_back(g[v] * f[v]);
  return out;
}

/// d t + t d evaluated degree by degree, vertex by vertex.
template <class F>
bool is_boundary_of(const RepChainMap<F>& phi, const RepComplex<F>& a, const RepComplex<F>& b,
                    const RepHomotopy<F>& t) {
  int lo = std::min(a.window().lo, b.window().lo) - 1, hi = std::max(a.window().hi, b.window().hi) + 1;
  for (int i = lo; i <= hi; ++i) {
    auto lhs = rep_sum(rep_mul(b.d(i - 1), t.at(i, a, b)), rep_mul(t.at(i + 1, a, b), a.d(i)));
    if (!(lhs == phi.at(i))) return false;
  }
  return true;
}

// 1. Worked example

Outcome worked_example() {
  Outcome o;
  auto doc = parse_document(slurp(kSource + "/samples/worked_example.json"));
  auto ring = gf(101, 3);
  auto p = complex_from_json(ring, doc);
  auto c = [](int i) { return static_cast<unsigned>(i + 2); };
  using Coeffs = std::vector<GF::value_type>;
  auto d = [&](int i) { return Coeffs{0, c(i), 0}; };
  auto dd = [&](int i) { return Coeffs{0, 0, c(i + 1) * c(i) % 101}; };
  const Coeffs minus_one{100, 0, 0}, zero{0, 0, 0}, one{1, 0, 0};
  auto build = [&](std::vector<std::vector<Coeffs>> rows, std::size_t cols) {
    RingMatrix<GF> m(ring, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t s = 0; s < cols; ++s) m.set_entry(r, s, rows[r][s]);
    return m;
  };
  // top vertex blocks, then the vertex-1 corner
  std::map<int, RingMatrix<GF>> top{
      {-1, build({{d(-1), minus_one}, {zero, d(0)}}, 2)},
      {0, build({{dd(0), d(1)}, {zero, dd(1)}}, 2)},
      {1, build({{d(2), minus_one}, {zero, d(3)}}, 2)},
      {2, build({{dd(3), d(4)}, {zero, dd(4)}}, 2)},
      {3, build({{d(5), minus_one}}, 2)},
  };
  std::map<int, RingMatrix<GF>> corner{{-1, build({{d(-1)}}, 1)}, {0, build({{dd(0)}}, 1)}, {1, build({{d(2)}}, 1)},
                                       {2, build({{dd(3)}}, 1)},   {3, build({{d(5)}}, 1)}};
  auto fp = f_obj(p);
  if (fp.n() != 2) o.fail("F(P) has the wrong number of vertices");
  // vertex-1 row P^-1, P^0, P^2, P^3, P^5, P^6 is rank one throughout
  for (int i = -1; i <= 4; ++i) {
    auto term = fp.term(i);
    std::vector<std::size_t> want{1, i == 4 ? 1u : 2u};
    if (term.vdims != want) o.fail("term shape at F-degree " + std::to_string(i));
    RingMatrix<GF> incl(ring, want[1], 1);
    incl.set_entry(0, 0, one);
    if (!(term.arrows[0] == incl)) o.fail("arrow at F-degree " + std::to_string(i));
  }
  for (int i : {-2, 5})
    if (fp.dim(i, 0) + fp.dim(i, 1)) o.fail("F(P) is nonzero at F-degree " + std::to_string(i));
  for (const auto& [i, m] : top) {
    if (!(fp.d(i)[1] == m)) o.fail("top-vertex differential at F-degree " + std::to_string(i));
    if (!(fp.d(i)[0] == corner.at(i))) o.fail("vertex-1 differential at F-degree " + std::to_string(i));
  }
  if (!validate(fp).ok) o.fail("F(P) is not a complex");
  if (canonical(rep_complex_to_json(fp)) != slurp(kSource + "/tests/data/worked_example_f.json"))
    o.fail("serialized F(P) differs from the golden file");
  if (o.ok) o.info = "F-degrees -1..4 match term by term";
  return o;
}

// 2. Transport

Outcome transport() {
  Outcome o;
  int fallbacks = 0;
  over_rings(300, [&](int t, int N, const auto& ring) {
    Rng rng(2, t);
    RandomBounds b{2, 3 * N, 3};
    auto q = random_ncomplex(N, ring, rng, b);
    auto p = random_ncomplex(N, ring, rng, b);
    auto [f, w] = random_null_homotopic(q, p, rng);
    if (!maps_equal(reconstruct(f.source(), f.target(), w), f)) o.fail("bad generated witness, trial " + std::to_string(t));
    auto res = transport_homotopy(f, w);
    if (!res.formula_ok) ++fallbacks;
    if (!is_boundary_of(f_mor(f), f_obj(f.source()), f_obj(f.target()), res.value))
      o.fail("F(f) != d t + t d at trial " + std::to_string(t));
  });
  if (fallbacks) o.fail(std::to_string(fallbacks) + " trials needed the solver fallback");
  if (o.ok) o.info = "300/300 exact";
  return o;
}

// 3. Full faithfulness

Outcome full_faithfulness() {
  Outcome o;
  std::size_t nonzero = 0;
  over_rings(200, [&](int t, int N, const auto& ring) {
    Rng rng(3, t);
    RandomBounds b{2, 2 * N, 3};
    auto q = random_ncomplex(N, ring, rng, b);
    auto p = random_ncomplex(N, ring, rng, b);
    auto lhs = hom_space_dim(q, p).hom_k;
    auto rhs = rep_hom_space_dim(f_obj(q), f_obj(p)).hom_k;
    if (lhs) ++nonzero;
    if (lhs != rhs)
      o.fail("trial " + std::to_string(t) + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs));
  });
  if (o.ok) o.info = "200/200 equal, " + std::to_string(nonzero) + " with nonzero hom_K";
  return o;
}

// 4. Exactness correspondence

Outcome exactness() {
  Outcome o;
  int exact = 0, controls_inexact = 0;
  over_rings(200, [&](int t, int N, const auto& ring) {
    using F = std::decay_t<decltype(ring.field)>;
    Rng rng(4, t);
    auto [x, known] = detail::exactness_instance<F>(N, ring, rng, RandomBounds{2, 2 * N, 3}, t);
    bool ne = is_n_exact(x);
    bool cl = is_classically_acyclic(f_obj(x));
    if (known && !ne) o.fail("exact construction with homology, trial " + std::to_string(t));
    if (ne != cl) o.fail("disagreement at trial " + std::to_string(t));
    exact += ne;
    controls_inexact += !known && !ne;
  });
  if (!exact || !controls_inexact) o.fail("the mix lacks exact or non-exact instances");
  if (o.ok) o.info = std::to_string(exact) + " exact, " + std::to_string(200 - exact) + " not, zero disagreements";
  return o;
}

// 5. Suspension

Outcome suspension() {
  Outcome o;
  int fallbacks = 0;
  over_rings(150, [&](int t, int N, const auto& ring) {
    Rng rng(5, t);
    auto p = random_ncomplex(N, ring, rng, RandomBounds{2, 2 * N, 3});
    auto sc = suspension_compat(p);
    if (!sc.formula_ok) ++fallbacks;
    auto fs = f_obj(sigma(p));
    auto fp1 = shift(f_obj(p));
    if (!validate(sc.alpha).ok || !validate(sc.beta).ok) o.fail("alpha or beta is not a chain map");
    if (!maps_equal(compose(sc.alpha, sc.beta), identity_map(fp1))) o.fail("alpha beta != 1 at trial " + std::to_string(t));
    if (!is_boundary_of(add_maps(compose(sc.beta, sc.alpha), identity_map(fs), true), fs, fs, sc.s))
      o.fail("beta alpha - 1 != d s + s d at trial " + std::to_string(t));
  });
  if (o.ok) o.info = "150/150, " + std::to_string(fallbacks) + " transcription fallbacks";
  return o;
}

// 6. Generators

template <class F>
bool exhibited_equivalence(const RepComplex<F>& x, const std::function<RepComplex<F>(int)>& make, int& where) {
  DegreeRange w = x.window();
  for (int d = w.lo; d <= w.hi; ++d) {
    auto y = make(d);
    auto e = find_rep_equivalence(x, y);
    if (!e) continue;
    const auto& [u, v] = *e;
    if (!validate(u).ok || !validate(v).ok) return false;
    auto dx = add_maps(compose(v, u), identity_map(x), true);
    auto dy = add_maps(compose(u, v), identity_map(y), true);
    auto hx = rep_null_homotopy(dx), hy = rep_null_homotopy(dy);
    if (!hx || !hy || !is_boundary_of(dx, x, x, *hx) || !is_boundary_of(dy, y, y, *hy)) return false;
    where = d;
    return true;
  }
  return false;
}

Outcome generators() {
  Outcome o;
  auto run = [&](int N, const auto& ring) {
    using F = std::decay_t<decltype(ring.field)>;
    const int n = N - 1;
    auto R = stalk(N, ring, 0);
    int at = 0;
    if (!exhibited_equivalence<F>(f_obj(theta(R, -(N - 1))), [&](int d) { return stalk(e_lambda(ring, n, 1, 1), d); }, at))
      o.fail("F(Theta^{N-1} R) vs R_1 at N=" + std::to_string(N));
    if (!exhibited_equivalence<F>(f_obj(sigma(theta(R, -(N - 2)))),
                                  [&](int d) { return stalk(e_lambda(ring, n, n, 1), d); }, at))
      o.fail("F(Sigma Theta^{N-2} R) vs R_{N-1} at N=" + std::to_string(N));
  };
  for (int N = 3; N <= 5; ++N) {
    run(N, gf(2));
    run(N, gf(3));
    run(N, qq());
  }
  if (o.ok) o.info = "N = 3, 4, 5 over GF(2), GF(3), Q";
  return o;
}

// 7. Homology vanishing

Outcome homology_vanishing() {
  Outcome o;
  int forced = 0, sampled = 0;
  over_rings(200, [&](int t, int N, const auto& ring) {
    Rng rng(7, t);
    using X = std::decay_t<decltype(random_ncomplex(N, ring, rng))>;
    X x;
    bool found = false;
    for (int a = 0; a < 40 && !found; ++a) {
      x = random_ncomplex(N, ring, rng, RandomBounds{2, 2 * N, 3});
      found = detail::h1_vanishes(x);
    }
    if (!found) {
      x = random_disk_sum(N, ring, rng, RandomBounds{2, 2 * N, 3}, 0, true);
      ++forced;
    } else {
      ++sampled;
    }
    for (int i = x.window().lo; i <= x.window().hi; ++i) {
      if (homology_at(x, i, 1).dim) o.fail("H_1 != 0 after conditioning, trial " + std::to_string(t));
      for (int r = 2; r < N; ++r)
        if (homology_at(x, i, r).dim) o.fail("H_" + std::to_string(r) + " != 0 at trial " + std::to_string(t));
    }
  });
  if (o.ok) o.info = std::to_string(sampled) + " by rejection, " + std::to_string(forced) + " exact fallbacks";
  return o;
}

// 8. Disks

Outcome disks() {
  Outcome o;
  for (int N = 2; N <= 5; ++N)
    for (int j = -3; j <= 3; ++j)
      for (std::size_t rank : {1u, 2u}) {
        auto d = disk(N, gf(3), j, N, rank);
        if (!is_null_homotopic(identity_map(d)) || !homology(d).is_zero())
          o.fail("D^" + std::to_string(j) + "_" + std::to_string(N) + " is not contractible");
      }
  auto d = disk(3, gf(2), 1, 2, 1);
  std::map<std::pair<int, int>, std::size_t> nz;
  for (const auto& [k, q] : homology(d).entries)
    if (q.dim) nz[k] = q.dim;
  if (nz != std::map<std::pair<int, int>, std::size_t>{{{1, 1}, 1}, {{0, 2}, 1}}) o.fail("D^1_2 fingerprint");
  if (canonical(homology_to_json(d, homology(d))) != slurp(kSource + "/tests/data/disk_3_gf2_1_2_1.homology.json"))
    o.fail("homology document differs from the golden file");
  if (!(complex_from_json(gf(2), parse_document(slurp(kSource + "/samples/disk_3_gf2_1_2_1.json"))) == d))
    o.fail("disk document differs from the sample");
  if (o.ok) o.info = "56 full disks contractible, D^1_2 has H^1_1 = H^0_2 = k";
  return o;
}

// 9. Total acyclicity

Outcome total_acyclicity() {
  Outcome o;
  auto x = complex_from_json(gf(2, 3), parse_document(slurp(kSource + "/samples/x_complex.json")));
  if (!(x == testutil::x_complex())) o.fail("sample is not the x-multiplication complex");
  auto battery = default_battery(x);
  if (!is_n_totally_acyclic(x, battery)) o.fail("x-complex is not N-totally acyclic");
  auto r = correspondence_check(x, battery);
  if (!r.f_totally_acyclic || !r.ok()) o.fail("F side: " + r.note);
  auto d = disk(3, gf(2), 1, 2, 1);
  auto rd = correspondence_check(d, default_battery(d));
  if (rd.n_totally_acyclic || rd.f_totally_acyclic || !rd.ok()) o.fail("D^1_2 does not fail both sides");
  if (o.ok) o.info = std::to_string(battery.members.size()) + " battery members";
  return o;
}

// 10. N = 2 against the classical oracle

template <class K, class F>
bool dense_equal(const K& k, const RingMatrix<F>& a, const oracle::Dense<K>& b) {
  auto ca = oracle::convert(k, a);
  if (ca.size() != b.size()) return false;
  for (std::size_t r = 0; r < ca.size(); ++r) {
    if (ca[r].size() != b[r].size()) return false;
    for (std::size_t s = 0; s < ca[r].size(); ++s)
      if (!k.zero(k.sub(ca[r][s], b[r][s]))) return false;
  }
  return true;
}

template <class K, class F>
void degeneration_trial(Outcome& o, const K& k, const CoeffRing<F>& ring, Rng& rng, int t) {
  std::string at = " at trial " + std::to_string(t);
  RandomBounds b{2, 5, 3};
  auto x = random_ncomplex(2, ring, rng, b);
  auto y = random_ncomplex(2, ring, rng, b);
  auto ox = oracle::from_library(k, x), oy = oracle::from_library(k, y);
  if (!oracle::is_complex(k, ox)) o.fail("oracle rejects the complex" + at);
  auto h = homology(x);
  for (const auto& [i, dim] : oracle::homology(k, ox))
    if (homology_at(x, i, 1).dim != dim) o.fail("homology" + at);
  for (const auto& [key, q] : h.entries)
    if (q.dim && (key.first < ox.lo || key.first > ox.hi)) o.fail("homology outside the support" + at);
  auto f = random_chain_map(x, y, rng);
  std::map<int, oracle::Dense<K>> of;
  for (int i = ox.lo; i <= ox.hi; ++i) of[i] = oracle::convert(k, f.at(i));
  auto oc = oracle::cone(k, ox, oy, of);
  auto c = cone(f);
  int lo = std::min(oc.lo, c.support().empty() ? oc.lo : c.support().lo) - 1;
  int hi = std::max(oc.hi, c.support().empty() ? oc.hi : c.support().hi) + 1;
  for (int i = lo; i <= hi; ++i)
    if (c.dim(i) != oc.dim(i) || !dense_equal(k, c.d(i), oc.diff(i))) o.fail("cone" + at);
  auto hd = hom_space_dim(x, y);
  auto ohd = oracle::hom_dims(k, ox, oy);
  if (hd.chain_maps != ohd.chain || hd.null_homotopic != ohd.null || hd.hom_k != ohd.hom_k) o.fail("hom dims" + at);
  auto fx = f_obj(x);
  for (int i = lo; i <= hi; ++i)
    if (fx.dim(i, 0) != x.dim(i) || !dense_equal(k, fx.d(i)[0], ox.diff(i))) o.fail("F(P) != P" + at);
  if (rep_hom_space_dim(fx, f_obj(y)).hom_k != ohd.hom_k) o.fail("hom dims after F" + at);
}

Outcome degeneration() {
  Outcome o;
  for (int t = 0; t < 100; ++t) {
    Rng rng(10, t);
    switch (t % 4) {
      case 0: degeneration_trial(o, oracle::ModP{2}, gf(2), rng, t); break;
      case 1: degeneration_trial(o, oracle::ModP{3}, gf(3), rng, t); break;
      case 2: degeneration_trial(o, oracle::ModP{5}, gf(5), rng, t); break;
      default: degeneration_trial(o, oracle::Rat{}, qq(), rng, t); break;
    }
  }
  if (o.ok) o.info = "100/100 match the classical oracle";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"worked example", worked_example},
      {"homotopy transport", transport},
      {"full faithfulness", full_faithfulness},
      {"exactness correspondence", exactness},
      {"suspension compatibility", suspension},
      {"generator images", generators},
      {"homology vanishing", homology_vanishing},
      {"disk goldens", disks},
      {"total acyclicity", total_acyclicity},
      {"N=2 degeneration", degeneration},
  };
  int failed = 0, k = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << ++k << " " << c.name << ": " << o.info << std::endl;
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
