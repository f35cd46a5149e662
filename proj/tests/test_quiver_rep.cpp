#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ncx;
using testutil::gf;
using testutil::mat;
using GF = PrimeField;

TEST(Projectives, EvaluationAdjoints) {
  auto k = gf(2);
  auto l = e_lambda(k, 2, 1, 1);
  EXPECT_EQ(l.vdims, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(l.arrows[0], mat(k, {{1}}));
  auto r = e_rho(k, 2, 1, 1);
  EXPECT_EQ(r.vdims, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(e_lambda(k, 4, 4, 2).vdims, (std::vector<std::size_t>{0, 0, 0, 2}));
}

TEST(Projectives, Decomposition) {
  auto k = gf(3);
  auto p = decompose_projective(e_lambda(k, 3, 2, 2));
  ASSERT_TRUE(p.projective);
  EXPECT_EQ(p.ranks, (std::vector<std::size_t>{0, 2, 0}));

  LineRep<GF> zero_arrow(k, {1, 1});
  auto bad = decompose_projective(zero_arrow);
  EXPECT_FALSE(bad.projective);
  EXPECT_EQ(bad.failing_arrow, 1);

  LineRep<GF> into_plane(k, {1, 2});
  into_plane.arrows[0] = mat(k, {{1}, {1}});
  auto ok = decompose_projective(into_plane);
  ASSERT_TRUE(ok.projective);
  EXPECT_EQ(ok.ranks, (std::vector<std::size_t>{1, 1}));
}

TEST(Projectives, TruncatedPolySplitness) {
  auto r = gf(2, 2);
  LineRep<GF> by_x(r, {1, 1});
  by_x.arrows[0] = testutil::xpow(r, 1);
  EXPECT_FALSE(decompose_projective(by_x).projective);
  LineRep<GF> unit(r, {1, 1});
  unit.arrows[0] = RingMatrix<GF>::identity(r, 1) + testutil::xpow(r, 1);
  EXPECT_TRUE(decompose_projective(unit).projective);
}

TEST(RepComplex, ValidateAndHomology) {
  auto k = gf(2);
  auto c = two_term(k, 2, 2, 0);
  EXPECT_TRUE(validate(c).ok);
  auto h = vertex_homology(c);
  // e_lambda(2) -> e_lambda(1): vertex 1 has 0 -> k, vertex 2 has k -> k
  EXPECT_EQ(h.at({1, 1}).dim, 1u);
  EXPECT_EQ(h.at({0, 2}).dim + h.at({1, 2}).dim, 0u);
  EXPECT_FALSE(is_classically_acyclic(c));
}

TEST(RepHom, Examples) {
  auto k = gf(3);
  auto one = stalk(e_lambda(k, 2, 1, 1), 0);
  EXPECT_EQ(rep_hom_space_dim(one, one).hom_k, 1u);
  auto a = e_lambda(k, 2, 1, 1);
  RepComplex<GF> cyl(2, k, Support::bounded(0, 1), {a, a});
  cyl.set_d(0, identity_rep_map(a));
  EXPECT_EQ(rep_hom_space_dim(cyl, one).hom_k, 0u);
  EXPECT_EQ(rep_hom_space_dim(cyl, cyl).hom_k, 0u);
  EXPECT_TRUE(rep_null_homotopy(identity_map(cyl)));
  EXPECT_FALSE(rep_null_homotopy(identity_map(one)));
}

TEST(Hat, OnObjectsAndIdentities) {
  auto k = gf(2);
  EXPECT_EQ(hat(e_lambda(k, 2, 1, 1)), e_rho(k, 2, 1, 1));
  auto c = f_obj(disk(3, k, 2, 2, 1));
  auto hc = hat(c);
  auto id = hat(identity_map(c), hc, hc);
  EXPECT_TRUE(maps_equal(id, identity_map(hc)));
  EXPECT_TRUE(validate(hc).ok);
}

TEST(Hat, PreservesHomDimensions) {
  for (int t = 0; t < 50; ++t) {
    Rng rng(31, t);
    int N = 2 + t % 3;
    auto ring = t % 2 ? gf(3) : gf(2);
    auto a = f_obj(random_ncomplex(N, ring, rng, {2, 2 * N, 2}));
    auto b = f_obj(random_ncomplex(N, ring, rng, {2, 2 * N, 2}));
    EXPECT_EQ(rep_hom_space_dim(a, b).hom_k, rep_hom_space_dim(hat(a), hat(b)).hom_k) << "trial " << t;
  }
}

TEST(Standardize, IsAnIsomorphism) {
  auto k = gf(3);
  LineRep<GF> t(k, {1, 2});
  t.arrows[0] = mat(k, {{1}, {2}});
  RepComplex<GF> c(2, k, Support::bounded(0, 0), {t});
  auto [s, iso] = standardize(c);
  EXPECT_EQ(s.term(0), standard_projective(k, {1, 1}));
  EXPECT_TRUE(validate(iso).ok);
}
