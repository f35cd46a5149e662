#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ncx;
using testutil::gf;
using testutil::mat;
using GF = PrimeField;

TEST(FunctorF, DegenerateCaseIsIdentity) {
  auto k = gf(3);
  for (int t = 0; t < 10; ++t) {
    Rng rng(8, t);
    auto p = random_ncomplex(2, k, rng);
    auto fp = f_obj(p);
    ASSERT_EQ(fp.n(), 1);
    DegreeRange w = p.window();
    for (int i = w.lo; i <= w.hi; ++i) {
      EXPECT_EQ(fp.dim(i, 0), p.dim(i));
      EXPECT_EQ(fp.d(i)[0], p.d(i));
    }
  }
}

TEST(FunctorF, FullDiskImageIsContractible) {
  for (int N = 2; N <= 5; ++N) {
    auto fp = f_obj(disk(N, gf(2), 3, N, 1));
    EXPECT_TRUE(validate(fp).ok);
    EXPECT_TRUE(rep_null_homotopy(identity_map(fp))) << "N=" << N;
  }
}

TEST(FunctorF, PeriodicNeedsMultipleOfN) {
  auto x = testutil::x_complex();
  EXPECT_THROW(f_obj(x), Error);
  auto fx = f_obj(inflate(x, 3));
  EXPECT_TRUE(fx.periodic());
  EXPECT_EQ(fx.support().period, 2);
  EXPECT_TRUE(validate(fx).ok);
}

TEST(FunctorF, MorphismsOfIdentityAndZero) {
  auto p = disk(3, gf(3), 2, 2, 2);
  auto fp = f_obj(p);
  EXPECT_TRUE(maps_equal(f_mor(identity_map(p)), identity_map(fp)));
  auto z = f_mor(zero_map(p, p));
  for (const auto& [i, m] : z.maps()) EXPECT_TRUE(is_zero(m));
}

TEST(FunctorF, RandomMorphismsCommute) {
  for (int t = 0; t < 300; ++t) {
    Rng rng(12, t);
    int N = 2 + t % 4;
    auto ring = t % 3 == 0 ? gf(2) : gf(3);
    auto q = random_ncomplex(N, ring, rng, {2, 2 * N, 2});
    auto p = random_ncomplex(N, ring, rng, {2, 2 * N, 2});
    auto f = random_chain_map(q, p, rng);
    EXPECT_TRUE(validate(f_mor(f)).ok) << "trial " << t;
  }
}

TEST(Transport, ZeroWitness) {
  auto p = disk(3, gf(2), 2, 2, 1);
  auto t = transport_homotopy(zero_map(p, p), HomotopyWitness<GF>{});
  EXPECT_TRUE(t.formula_ok);
  for (const auto& [i, m] : t.value.h) EXPECT_TRUE(is_zero(m));
}

TEST(Transport, RandomWitnessesOverGF2) {
  auto k = gf(2);
  for (int t = 0; t < 40; ++t) {
    Rng rng(21, t);
    auto q = random_ncomplex(3, k, rng, {2, 9, 3});
    auto p = random_ncomplex(3, k, rng, {2, 9, 3});
    auto [f, w] = random_null_homotopic(q, p, rng);
    auto res = transport_homotopy(f, w);
    auto fq = f_obj(f.source()), fp = f_obj(f.target());
    EXPECT_TRUE(res.formula_ok) << res.discrepancy;
    EXPECT_TRUE(maps_equal(boundary(fq, fp, res.value), f_mor(f)));
    EXPECT_TRUE(rep_null_homotopy(f_mor(f)));
  }
}

TEST(Faithful, RoundTrip) {
  auto p = disk(3, gf(2), 2, 2, 1);
  auto s = faithful_witness(zero_map(p, p), RepHomotopy<GF>{});
  for (const auto& [i, m] : s.value.s) EXPECT_TRUE(m.is_zero());
  for (int t = 0; t < 30; ++t) {
    Rng rng(4, t);
    int N = 2 + t % 4;
    auto q = random_ncomplex(N, gf(3), rng, {2, 2 * N, 2});
    auto r = random_ncomplex(N, gf(3), rng, {2, 2 * N, 2});
    auto [f, w] = random_null_homotopic(q, r, rng);
    auto tr = transport_homotopy(f, w);
    auto back = faithful_witness(f, tr.value);
    EXPECT_TRUE(back.formula_ok) << back.discrepancy;
    EXPECT_TRUE(maps_equal(reconstruct(f.source(), f.target(), back.value), f));
  }
}

TEST(Full, IdentityAndZero) {
  for (int N = 2; N <= 4; ++N) {
    Rng rng(6, N);
    auto p = random_ncomplex(N, gf(3), rng, {2, 2 * N, 2});
    auto fp = f_obj(p);
    auto id = full_witness(p, p, identity_map(fp));
    EXPECT_TRUE(is_null_homotopic(add_maps(id.value.f, identity_map(p), true)));
    RepChainMap<GF> zero(fp, fp);
    auto z = full_witness(p, p, zero);
    EXPECT_TRUE(is_null_homotopic(z.value.f));
  }
}

TEST(Full, RecoversKnownMapsUpToHomotopy) {
  for (int t = 0; t < 30; ++t) {
    Rng rng(9, t);
    int N = 2 + t % 4;
    auto q = random_ncomplex(N, gf(2), rng, {2, 2 * N, 2});
    auto p = random_ncomplex(N, gf(2), rng, {2, 2 * N, 2});
    auto g = random_chain_map(q, p, rng);
    auto res = full_witness(g.source(), g.target(), f_mor(g));
    EXPECT_TRUE(res.formula_ok) << res.discrepancy;
    EXPECT_TRUE(is_null_homotopic(add_maps(transfer(res.value.f, g.source(), g.target()), g, true)));
  }
}

TEST(Suspension, ZeroAndDegenerate) {
  auto zero = NComplex<GF>::zero(3, gf(2));
  auto z = suspension_compat(zero);
  EXPECT_TRUE(z.alpha_beta_identity && z.homotopy_identity);
  auto p = disk(2, gf(3), 1, 2, 1);
  auto s = suspension_compat(p);
  EXPECT_TRUE(s.formula_ok);
  for (const auto& [i, m] : s.alpha.maps()) {
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].rows(), m[0].cols());
  }
}

TEST(Suspension, RandomComplexes) {
  for (int t = 0; t < 30; ++t) {
    Rng rng(15, t);
    int N = 3 + t % 3;
    auto p = random_ncomplex(N, gf(t % 2 ? 2 : 3), rng, {2, 2 * N, 2});
    auto s = suspension_compat(p);
    EXPECT_TRUE(s.formula_ok) << s.discrepancy;
    EXPECT_TRUE(s.alpha_beta_identity);
    EXPECT_TRUE(s.homotopy_identity);
  }
}

TEST(Generators, ImagesMatch) {
  for (int N = 3; N <= 5; ++N)
    for (const auto& g : generator_images(N, gf(3))) EXPECT_TRUE(g.isomorphic) << g.source << " vs " << g.expected;
}
