#include <gtest/gtest.h>

#include "nconj/constructions.hpp"

using namespace nconj;

TEST(Split, HandExecutedCases) {
  auto a = split_avoiding_factors(Int(-3), 3);
  EXPECT_EQ(a.v, 10);
  EXPECT_EQ(a.w, -13);
  EXPECT_TRUE(a.violations().empty());

  auto b = split_avoiding_factors(Int(-2), 2);
  EXPECT_EQ(b.v, 1);
  EXPECT_EQ(b.w, -3);
  EXPECT_TRUE(b.violations().empty());
  EXPECT_FALSE(b.v_exceeds_q()); // q < v does not hold here

  auto c = split_avoiding_factors(Int(-5), 7);
  EXPECT_EQ(c.v, 206);
  EXPECT_EQ(c.w, -211);

  auto d = split_avoiding_factors(Int(-8), 24);
  EXPECT_EQ(d.primorial_q, 223092870);
  EXPECT_TRUE(d.violations().empty());
}

TEST(Split, Preconditions) {
  EXPECT_THROW(split_avoiding_factors(Int(0), 5), domain_error);
  EXPECT_THROW(split_avoiding_factors(Int(-6), 5), domain_error);
  EXPECT_THROW(split_avoiding_factors(Int(-1), 1), domain_error);
}

TEST(Pell, Sequences) {
  PellIterator it(Int(1));
  std::vector<std::pair<long, long>> got;
  for (int i = 0; i < 3; ++i) {
    auto s = it.next();
    got.emplace_back(s.s.get_si(), s.t.get_si());
  }
  EXPECT_EQ(got, (std::vector<std::pair<long, long>>{{1, 1}, {7, 5}, {41, 29}}));
  auto p2 = pell_solution(Int(2), 2);
  EXPECT_EQ(p2.s, 19);
  EXPECT_EQ(p2.t, 17);
  for (long y : {1L, 2L, 3L, 66L, 6798L}) {
    PellIterator j{Int(y)};
    for (int i = 0; i < 10; ++i) EXPECT_TRUE(j.next().satisfies()) << y;
    auto first = pell_solution(Int(y), 1);
    EXPECT_EQ(first.s, 1);
    EXPECT_EQ(first.t, 1);
  }
}

namespace {

void expect_sieved(const Int& y, const std::vector<Int>& z, std::uint64_t b) {
  for (std::uint32_t q : primes_up_to(b)) {
    if (q < 5) continue;
    EXPECT_FALSE(divides(Int(q), y)) << q;
    for (const auto& zi : z) EXPECT_FALSE(divides(Int(q), y + zi)) << q;
  }
  for (int q : {2, 3}) {
    EXPECT_FALSE(divides(Int(q), y));
    EXPECT_FALSE(divides(Int(q), y + z[0]));
  }
}

} // namespace

TEST(SelectY, Examples) {
  EXPECT_EQ(select_y(Int(0), Int(0), Int(0), 10), 1);
  Int y = select_y(Int(6), Int(12), Int(18), 10);
  expect_sieved(y, {Int(6), Int(12), Int(18)}, 10);

  ZConstants z = z_constants(35);
  Int y35 = select_y(z.z0, z.z1, z.z2, 100);
  expect_sieved(y35, {z.z0, z.z1, z.z2}, 100);

  // s = 11 has z0 = -5344, not divisible by 6.
  ZConstants z11 = z_constants(11);
  EXPECT_THROW(select_y(z11.z0, z11.z1, z11.z2, 100), domain_error);
  EXPECT_THROW(select_y(Int(0), Int(0), Int(0), 4), domain_error);
}

TEST(Konyagin, Instances) {
  auto k1 = konyagin_quintuple(1);
  EXPECT_EQ(k1.tuple, (Tuple{50653, -42875, -7776, -31, 29}));
  EXPECT_TRUE(k1.report.verdict);
  auto k2 = konyagin_quintuple(2);
  EXPECT_EQ(k2.tuple[0], pow(Int(1297), 3)); // s = 6^(2^2)
  EXPECT_EQ(k2.tuple.sum(), 0);
  EXPECT_EQ(konyagin_quintuple(4).tuple[0], pow(Int("2821109907457", 10), 3)); // s = 6^16
  EXPECT_THROW(konyagin_quintuple(0), domain_error);
  EXPECT_THROW(konyagin_quintuple(40), capacity_error);
}

TEST(OddFamily, SmallInstances) {
  auto f = odd_family(5, {}, 1);
  const auto& p = std::get<OddParams>(f.params);
  EXPECT_EQ(p.x, p.y);
  EXPECT_TRUE(f.report.verdict);
  EXPECT_EQ(f.tuple.size(), 5u);
  EXPECT_TRUE(divides(Int(10), p.y));
  EXPECT_EQ(f.tuple[0] + f.tuple[1] + f.tuple[2], 8);

  for (unsigned n : {5u, 7u, 9u}) {
    auto g = odd_family(n, ForbiddenSet{3, 7}, 2);
    EXPECT_TRUE(g.report.verdict);
    EXPECT_TRUE(check_forbidden(g.tuple, ForbiddenSet{3, 7}).ok);
    EXPECT_EQ(g.tuple.size(), n);
  }
}

TEST(OddFamily, Admissibility) {
  EXPECT_THROW(odd_family(5, ForbiddenSet{5}, 1), domain_error);
  EXPECT_THROW(odd_family(5, ForbiddenSet{10}, 1), domain_error);
  EXPECT_THROW(odd_family(6, {}, 1), domain_error);
  EXPECT_THROW(odd_family(5, {}, 0), domain_error);
  EXPECT_THROW(odd_family(5, {}, 1, YPolicy::factorial_faithful), capacity_error);
}

TEST(OddFamily, BoundGrowsWithPellIndex) {
  double prev = 0;
  for (unsigned long i = 1; i <= 5; ++i) {
    auto f = odd_family(5, {}, i);
    double q = quality_lower_bound(f.tuple, f.structural_parts).value();
    EXPECT_GE(q, prev);
    prev = q;
  }
  EXPECT_GE(prev, 1.5);
}

TEST(GeneralFamily, MinimalScale) {
  GeneralScale scale;
  scale.exponent_multiple = 1;
  auto f = general_family(6, {}, scale);
  const auto& p = std::get<GeneralParams>(f.params);
  EXPECT_EQ(p.s, 66);
  EXPECT_EQ(p.t, 103);
  EXPECT_EQ(p.y, 6798);
  EXPECT_EQ(gcd(Int(6799), Int(67979)), 1);
  EXPECT_TRUE(f.report.verdict);
  // The first four entries add up to 2y^5 - 100y^6.
  EXPECT_EQ(f.tuple[0] + f.tuple[1] + f.tuple[2] + f.tuple[3], 2 * pow(p.y, 5) - 100 * pow(p.y, 6));
  EXPECT_LT(f.tuple[4], 0);
  EXPECT_GT(f.tuple[5], 0);
}

TEST(GeneralFamily, ForbiddenAndLongerTuples) {
  GeneralScale scale;
  scale.exponent_multiple = 1;
  auto f = general_family(8, ForbiddenSet{5, 7}, scale);
  EXPECT_TRUE(f.report.verdict);
  EXPECT_EQ(f.tuple.size(), 8u);
  for (std::size_t i = 6; i < 8; ++i) {
    EXPECT_LT(f.tuple[i], 0);
    EXPECT_TRUE(is_probable_prime(abs(f.tuple[i])));
  }
  EXPECT_EQ(std::get<GeneralParams>(f.params).s, 2310);
  EXPECT_THROW(general_family(5, {}, scale), domain_error);
}

TEST(GeneralFamily, OrdersPolicy) {
  GeneralScale scale;
  scale.exponent_policy = ExponentPolicy::orders;
  scale.exponent_multiple = 1;
  scale.caps.max_entry_bits = 1 << 20;
  // The order lcm at y = 6798 is far above the cap.
  EXPECT_THROW(general_family(6, {}, scale), capacity_error);
}

TEST(GeneralFamily, DryRun) {
  auto d = general_family_dry_run(6, {}, 11);
  EXPECT_EQ(d.s, 39916800);
  EXPECT_EQ(d.t, 103);
  EXPECT_EQ(d.split_m, -4 * d.u);
  EXPECT_GT(d.log10_x, 1e6);
}

TEST(NineFifths, Instances) {
  auto [f, rep] = nine_fifths_family(Int(3), 2);
  EXPECT_EQ(f.tuple, Tuple({Int("73222472421", 10), Int("-7626831723", 10), Int("-65866046442", 10),
                            Int(270405136), Int(608)}));
  EXPECT_EQ(f.tuple.sum(), 0);
  EXPECT_EQ(rep.setwise_gcd, 1);
  EXPECT_TRUE(rep.exact_divisor_claim);
  EXPECT_TRUE(rep.prime_support_claim);

  // At h = 3 one pairwise gcd is 13125 = 3 * 5^4 * 7, which divides none of the four bounds.
  auto [g, rep3] = nine_fifths_family(Int(3), 3);
  EXPECT_FALSE(rep3.exact_divisor_claim);
  EXPECT_TRUE(rep3.prime_support_claim);
  ASSERT_EQ(rep3.exact_violations.size(), 1u);
  EXPECT_EQ(rep3.exact_violations[0].gcd, 13125);

  EXPECT_THROW(nine_fifths_family(Int(9), 1), domain_error);
  EXPECT_THROW(nine_fifths_family(Int(2), 1), domain_error);
}

TEST(AnQuadruple, Instances) {
  EXPECT_EQ(an_quadruple(1).tuple, (Tuple{27, -8, -18, -1}));
  auto q2 = an_quadruple(2);
  EXPECT_EQ(q2.tuple, (Tuple{125, -64, -60, -1}));
  EXPECT_NEAR(quality_lower_bound(q2.tuple, q2.structural_parts).value(), 1.419592336315018, 1e-9);
}

TEST(Geometric, Instances) {
  auto g = geometric_family(5, Int(3));
  EXPECT_EQ(g.tuple, (Tuple{27, -18, -6, -2, -1}));
  EXPECT_TRUE(g.report.verdict);
  EXPECT_EQ(geometric_family(3, Int(2)).tuple, (Tuple{2, -1, -1}));
  EXPECT_THROW(geometric_family(2, Int(3)), domain_error);
  EXPECT_THROW(geometric_family(4, Int(1)), domain_error);
}
