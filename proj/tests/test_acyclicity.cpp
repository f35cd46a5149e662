#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ncx;
using testutil::gf;
using GF = PrimeField;

TEST(Battery, WindowAndSize) {
  auto d = disk(3, gf(2), 1, 2, 1);
  auto w = battery_window(d);
  EXPECT_EQ(w.lo, -3);
  EXPECT_EQ(w.hi, 4);
  EXPECT_EQ(default_battery(d, 0, 5).members.size(), 8u * 3u + 5u);
  auto x = testutil::x_complex();
  EXPECT_EQ(battery_window(x).lo, -3);
  EXPECT_EQ(battery_window(x).hi, 3 * 1 + 3 - 1);
  for (const auto& p : default_battery(x).members) {
    EXPECT_FALSE(p.periodic());
    EXPECT_TRUE(validate(p).ok);
  }
}

TEST(Battery, Deterministic) {
  auto d = disk(3, gf(3), 1, 2, 1);
  auto a = default_battery(d, 4), b = default_battery(d, 4);
  ASSERT_EQ(a.members.size(), b.members.size());
  for (std::size_t i = 0; i < a.members.size(); ++i) EXPECT_EQ(a.members[i], b.members[i]);
}

TEST(TotalAcyclicity, XComplex) {
  auto x = testutil::x_complex();
  auto battery = default_battery(x);
  EXPECT_TRUE(is_n_acyclic_hom(x, battery));
  EXPECT_TRUE(is_n_totally_acyclic(x, battery));
  EXPECT_TRUE(dual_exactness(x));
}

TEST(TotalAcyclicity, ZeroComplex) {
  auto z = NComplex<GF>::zero(3, gf(2));
  auto battery = default_battery(z);
  EXPECT_TRUE(is_n_totally_acyclic(z, battery));
  EXPECT_TRUE(correspondence_check(z, battery).ok());
}

TEST(TotalAcyclicity, ShortDiskFailsBothSides) {
  auto d = disk(3, gf(2), 1, 2, 1);
  auto battery = default_battery(d);
  EXPECT_FALSE(is_n_acyclic_hom(d, battery));
  auto r = correspondence_check(d, battery);
  EXPECT_FALSE(r.n_exact);
  EXPECT_FALSE(r.f_acyclic);
  EXPECT_FALSE(r.n_totally_acyclic);
  EXPECT_FALSE(r.f_totally_acyclic);
  EXPECT_TRUE(r.ok()) << r.note;
}

TEST(TotalAcyclicity, FullDiskIsContractible) {
  auto d = disk(4, gf(3), 2, 4, 1);
  auto battery = default_battery(d, 1, 5);
  auto r = correspondence_check(d, battery);
  EXPECT_TRUE(r.n_exact && r.n_totally_acyclic && r.f_totally_acyclic && r.dual_exact);
  EXPECT_TRUE(r.ok()) << r.note;
}

TEST(Correspondence, XComplexBothSides) {
  auto x = testutil::x_complex();
  auto r = correspondence_check(x, default_battery(x));
  EXPECT_TRUE(r.n_exact);
  EXPECT_TRUE(r.f_acyclic);
  EXPECT_TRUE(r.n_totally_acyclic);
  EXPECT_TRUE(r.f_totally_acyclic);
  EXPECT_TRUE(r.dual_exact);
  EXPECT_TRUE(r.ok()) << r.note;
}

TEST(Correspondence, WrongPowerIsNotExact) {
  auto x = x_power_complex(3, gf(2, 4), 2);
  auto r = correspondence_check(x, default_battery(x, 0, 5));
  EXPECT_FALSE(r.n_exact);
  EXPECT_FALSE(r.f_acyclic);
  EXPECT_TRUE(r.ok()) << r.note;
}

TEST(Correspondence, RandomBoundedComplexes) {
  for (int t = 0; t < 15; ++t) {
    Rng rng(77, t);
    int N = 2 + t % 3;
    auto x = random_ncomplex(N, gf(2), rng, {2, 2 * N, 2});
    auto r = correspondence_check(x, default_battery(x, t, 5));
    EXPECT_TRUE(r.ok()) << "trial " << t << ": " << r.note;
  }
}
