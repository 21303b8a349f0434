#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <set>

#include "nconj/search.hpp"
#include "reference_search.hpp"

using namespace nconj;

namespace {

std::set<std::vector<long>> as_set(const std::vector<SearchHit>& hits) {
  std::set<std::vector<long>> out;
  for (const auto& h : hits) {
    std::vector<long> v;
    for (const auto& e : h.tuple.entries()) v.push_back(e.get_si());
    EXPECT_TRUE(out.insert(v).second) << "duplicate canonical tuple";
  }
  return out;
}

SearchSpec spec(unsigned n, std::uint64_t b, Universe u, std::size_t top = 10) {
  SearchSpec s;
  s.n = n;
  s.entry_bound = b;
  s.universe = u;
  s.top_k = top;
  return s;
}

} // namespace

TEST(Search, BestR3UpTo81) {
  auto r = best_quality(spec(3, 81, Universe::R(), 1));
  ASSERT_EQ(r.top.size(), 1u);
  EXPECT_EQ(r.top[0].tuple, (Tuple{81, -80, -1}));
  EXPECT_NEAR(r.top[0].quality, 1.292030029884618, 1e-9);
  EXPECT_EQ(r.top[0].radical, 30);
}

TEST(Search, BoundTwo) {
  auto r = best_quality(spec(3, 2, Universe::R()));
  ASSERT_EQ(r.top.size(), 1u);
  EXPECT_EQ(r.top[0].tuple, (Tuple{2, -1, -1}));
  EXPECT_NEAR(r.top[0].quality, 1.0, 1e-12);
}

TEST(Search, ContainsNineEightOne) {
  auto all = enumerate_members(spec(3, 11, Universe::R()));
  bool found = false;
  for (const auto& h : all)
    if (h.tuple == Tuple{9, -8, -1}) {
      found = true;
      EXPECT_NEAR(h.quality, 1.226294385530917, 1e-9);
    }
  EXPECT_TRUE(found);
}

TEST(Search, TopZeroAndBudget) {
  EXPECT_TRUE(best_quality(spec(3, 20, Universe::R(), 0)).top.empty());
  EXPECT_THROW(best_quality(spec(6, 10000, Universe::R())), capacity_error);
  EXPECT_THROW(best_quality(spec(2, 10, Universe::R())), domain_error);
}

TEST(Search, TiesBreakLexicographically) {
  auto r = best_quality(spec(4, 12, Universe::B(), 50));
  for (std::size_t i = 1; i < r.top.size(); ++i) EXPECT_FALSE(hit_before(r.top[i], r.top[i - 1]));
}

TEST(Search, DeterministicAcrossThreadCounts) {
  auto a = spec(4, 16, Universe::R(), 25);
  auto b = a;
  a.threads = 1;
  b.threads = 7;
  auto ra = best_quality(a), rb = best_quality(b);
  ASSERT_EQ(ra.top.size(), rb.top.size());
  for (std::size_t i = 0; i < ra.top.size(); ++i) EXPECT_EQ(ra.top[i].tuple, rb.top[i].tuple);
  EXPECT_EQ(ra.members, rb.members);
}

TEST(Search, MatchesNaiveEnumerator) {
  struct Case {
    unsigned n;
    long b;
    Universe u;
  };
  for (const auto& c : {Case{3, 30, Universe::R()}, Case{3, 30, Universe::A()}, Case{4, 20, Universe::B()},
                        Case{4, 20, Universe::U()}, Case{5, 8, Universe::R()}, Case{5, 8, Universe::U(ForbiddenSet{3})}}) {
    auto fast = as_set(enumerate_members(spec(c.n, c.b, c.u)));
    auto slow = reference::members(c.n, c.b, c.u);
    std::vector<std::vector<long>> only_fast, only_slow;
    std::set_difference(fast.begin(), fast.end(), slow.begin(), slow.end(), std::back_inserter(only_fast));
    std::set_difference(slow.begin(), slow.end(), fast.begin(), fast.end(), std::back_inserter(only_slow));
    EXPECT_TRUE(only_fast.empty() && only_slow.empty())
        << "n=" << c.n << " b=" << c.b << " universe " << to_string(c.u.tag) << ": " << only_fast.size()
        << " only in search (first " << (only_fast.empty() ? std::string("-") : testing::PrintToString(only_fast[0]))
        << "), " << only_slow.size() << " only in reference (first "
        << (only_slow.empty() ? std::string("-") : testing::PrintToString(only_slow[0])) << ")";
  }
}

TEST(Search, NoPermutationOrNegationDuplicates) {
  auto hits = enumerate_members(spec(4, 15, Universe::B()));
  std::set<std::vector<long>> keys;
  for (const auto& h : hits) {
    std::vector<long> v, w;
    for (const auto& e : h.tuple.entries()) {
      v.push_back(e.get_si());
      w.push_back(-e.get_si());
    }
    std::sort(v.begin(), v.end());
    std::sort(w.begin(), w.end());
    EXPECT_TRUE(keys.insert(std::min(v, w)).second);
    EXPECT_GT(h.tuple[0], 0);
  }
}

TEST(Search, MembersRecheckIndependently) {
  for (const auto& h : enumerate_members(spec(4, 12, Universe::R()))) {
    EXPECT_TRUE(membership(h.tuple, Universe::R()).verdict);
    EXPECT_NEAR(h.quality, quality_exact(h.tuple).value(), 1e-12);
  }
}
