#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "functor_f.hpp"
#include "homotopy.hpp"
#include "ncomplex.hpp"
#include "random.hpp"

namespace ncx {

/// Finite stand-in for "all bounded complexes of finitely generated projectives".
template <class F>
struct TestBattery {
  std::vector<NComplex<F>> members;
};

/// Degrees a battery has to cover for x.
template <class F>
DegreeRange battery_window(const NComplex<F>& x, int periods = 3) {
  const int N = x.N();
  if (x.periodic()) return {-N, periods * x.support().period + N - 1};
  if (x.support().empty()) return {0, -1};
  return {x.support().lo - N, x.support().hi + N};
}

/// Disks D^j_i(R), 1 <= i <= N, j over the window, plus `randoms` seeded
/// random bounded complexes placed inside it.
template <class F>
TestBattery<F> default_battery(const NComplex<F>& x, std::uint64_t seed = 0, int randoms = 25, int periods = 3) {
  const int N = x.N();
  TestBattery<F> b;
  DegreeRange w = battery_window(x, periods);
  for (int j = w.lo; j <= w.hi; ++j)
    for (int i = 1; i <= N; ++i) b.members.push_back(disk(N, x.ring(), j, i, 1));
  if (w.lo > w.hi) return b;
  for (int t = 0; t < randoms; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    int width = std::min(w.hi - w.lo + 1, N + 1);
    int lo = rng.range(w.lo, w.hi - width + 1);
    b.members.push_back(random_disk_sum(N, x.ring(), rng, {1, width, 2}, lo));
  }
  return b;
}

template <class F>
bool is_n_acyclic_hom(const NComplex<F>& x, const TestBattery<F>& battery) {
  for (const auto& p : battery.members)
    if (hom_space_dim(p, x).hom_k != 0) return false;
  return true;
}

template <class F>
bool is_n_totally_acyclic(const NComplex<F>& x, const TestBattery<F>& battery) {
  if (!is_n_acyclic_hom(x, battery)) return false;
  for (const auto& p : battery.members)
    if (hom_space_dim(x, p).hom_k != 0) return false;
  return true;
}

/// N-exactness of the degreewise dual Hom(X, R).
template <class F>
bool dual_exactness(const NComplex<F>& x) {
  return is_n_exact(dual(x));
}

/// Both sides of the acyclicity correspondence for one complex.
struct CorrespondenceReport {
  bool n_exact = false;
  bool n_acyclic_hom = false;
  bool f_acyclic = false;
  bool n_totally_acyclic = false;
  bool f_totally_acyclic = false;
  bool dual_exact = false;
  bool acyclic_match = false;
  bool total_match = false;
  std::string note;
  bool ok() const { return acyclic_match && total_match; }
};

/// Compares N-side predicates for x with classical ones for F(x). The
/// classical total acyclicity test runs against F of the battery and the
/// stalks e_lambda(i) in every degree of F(x)'s window.
template <class F>
CorrespondenceReport correspondence_check(const NComplex<F>& x, const TestBattery<F>& battery) {
  const int N = x.N();
  NComplex<F> y = x;
  if (x.periodic() && x.support().period % N != 0) y = inflate(x, std::lcm(x.support().period, N));
  CorrespondenceReport r;
  r.n_exact = is_n_exact(y);
  r.n_acyclic_hom = is_n_acyclic_hom(y, battery);
  r.n_totally_acyclic = r.n_acyclic_hom && is_n_totally_acyclic(y, battery);
  r.dual_exact = dual_exactness(y);
  auto fy = f_obj(y);
  r.f_acyclic = is_classically_acyclic(fy);
  std::vector<RepComplex<F>> probes;
  for (const auto& p : battery.members) probes.push_back(f_obj(p));
  DegreeRange w = fy.periodic() ? DegreeRange{-2, 2 * fy.support().period + 1} : fy.window();
  for (int d = w.lo; d <= w.hi; ++d)
    for (int i = 1; i <= N - 1; ++i) probes.push_back(stalk(e_lambda(x.ring(), N - 1, i, 1), d));
  r.f_totally_acyclic = r.f_acyclic;
  for (const auto& p : probes) {
    if (!r.f_totally_acyclic) break;
    if (rep_hom_space_dim(p, fy).hom_k != 0 || rep_hom_space_dim(fy, p).hom_k != 0) r.f_totally_acyclic = false;
  }
  r.acyclic_match = r.n_exact == r.f_acyclic && (y.periodic() || r.n_exact == r.n_acyclic_hom);
  r.total_match = r.n_totally_acyclic == r.f_totally_acyclic;
  if (!r.acyclic_match) r.note = "acyclicity differs between the two sides";
  else if (!r.total_match) r.note = "total acyclicity differs between the two sides";
  return r;
}

}  // namespace ncx
