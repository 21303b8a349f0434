#pragma once

// Exhaustive search over small-height tuples in a universe, ranked by exact quality.
//
// Tuples are enumerated once per multiset and once per sign class: entries are
// listed in the order B, -B, B-1, -(B-1), ..., 1, -1 and a tuple is kept only if
// its index sequence is not larger than the one of its negation. Tuples whose
// entries are all +-1 have radical 1 and no quality; they are not reported.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "nconj/arith.hpp"
#include "nconj/quality.hpp"

namespace nconj {

struct SearchSpec {
  unsigned n = 3;
  std::uint64_t entry_bound = 10;
  Universe universe = Universe::R();
  std::size_t top_k = 10;
  std::uint64_t node_budget = 50'000'000;
  unsigned threads = 0; ///< 0: hardware concurrency
};

struct SearchHit {
  Tuple tuple;
  Int radical;
  double quality = 0.0;
};

struct SearchResult {
  std::vector<SearchHit> top;
  std::uint64_t nodes = 0;   ///< prefixes visited
  std::uint64_t members = 0; ///< canonical tuples in the universe
};

/// Number of multisets of size n-1 drawn from the 2B candidate values.
inline Int search_node_estimate(unsigned n, std::uint64_t entry_bound) {
  Int c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * entry_bound + n - 2, n - 1);
  return c;
}

/// Higher quality first, then lexicographically smaller entries.
inline bool hit_before(const SearchHit& a, const SearchHit& b) {
  if (a.quality != b.quality) return a.quality > b.quality;
  return std::lexicographical_compare(a.tuple.entries().begin(), a.tuple.entries().end(),
                                      b.tuple.entries().begin(), b.tuple.entries().end());
}

namespace detail {

class SearchWorker {
public:
  SearchWorker(const SearchSpec& spec, const std::vector<long>& values, bool keep_all)
      : spec_(spec), values_(values), keep_all_(keep_all) {
    idx_.resize(spec.n - 1);
  }

  void run_first(std::size_t first) {
    idx_[0] = first;
    descend(1, values_[first]);
  }

  std::vector<SearchHit> hits;
  std::uint64_t nodes = 0;
  std::uint64_t members = 0;

private:
  std::size_t index_of(long v) const {
    // values_ = B, -B, B-1, ..., 1, -1
    long b = static_cast<long>(spec_.entry_bound);
    return static_cast<std::size_t>(2 * (b - std::labs(v)) + (v < 0 ? 1 : 0));
  }

  void descend(std::size_t depth, long sum) {
    ++nodes;
    const std::size_t last = idx_[depth - 1];
    const long mag = std::labs(values_[last]);
    const std::size_t remaining = spec_.n - depth;
    // Every remaining entry has magnitude at most mag.
    if (std::labs(sum) > static_cast<long>(remaining) * mag) return;
    if (depth + 1 == spec_.n) {
      finish(sum, last);
      return;
    }
    for (std::size_t i = last; i < values_.size(); ++i) {
      idx_[depth] = i;
      descend(depth + 1, sum + values_[i]);
    }
  }

  void finish(long sum, std::size_t last) {
    const long an = -sum;
    const long b = static_cast<long>(spec_.entry_bound);
    if (an == 0 || std::labs(an) > b) return;
    const std::size_t ian = index_of(an);
    if (ian < last) return;

    // Negation-canonical: compare with the sorted index sequence of -t.
    std::vector<std::size_t> mine(idx_);
    mine.push_back(ian);
    std::vector<std::size_t> neg;
    neg.reserve(mine.size());
    for (std::size_t i : mine) neg.push_back(i ^ 1u);
    std::sort(neg.begin(), neg.end());
    if (neg < mine) return;

    std::vector<Int> entries;
    entries.reserve(mine.size());
    for (std::size_t i : mine) entries.emplace_back(values_[i]);
    Tuple t(std::move(entries));
    if (!quick_coprime(t)) return;
    if (!membership(t, spec_.universe).verdict) return;
    ++members;

    Int rad = 1;
    std::vector<long> primes;
    for (const auto& e : t.entries()) {
      long m = std::labs(e.get_si());
      for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
          primes.push_back(p);
          while (m % p == 0) m /= p;
        }
      if (m > 1) primes.push_back(m);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (long p : primes) rad *= p;
    if (rad == 1) return;

    SearchHit h;
    h.quality = big_ln(t.max_abs()).value / big_ln(rad).value;
    h.radical = rad;
    h.tuple = std::move(t);
    keep(std::move(h));
  }

  bool quick_coprime(const Tuple& t) const {
    if (spec_.universe.tag == UniverseTag::A) return check_setwise_coprime(t).ok;
    return check_pairwise_coprime(t).ok;
  }

  void keep(SearchHit h) {
    if (keep_all_) {
      hits.push_back(std::move(h));
      return;
    }
    if (spec_.top_k == 0) return;
    if (hits.size() == spec_.top_k && !hit_before(h, hits.back())) return;
    auto pos = std::upper_bound(hits.begin(), hits.end(), h, hit_before);
    hits.insert(pos, std::move(h));
    if (hits.size() > spec_.top_k) hits.pop_back();
  }

  const SearchSpec& spec_;
  const std::vector<long>& values_;
  bool keep_all_;
  std::vector<std::size_t> idx_;
};

} // namespace detail

// Position of v in the order B, -B, B-1, -(B-1), ..., 1, -1.
inline std::size_t search_value_index(const Int& v, std::uint64_t entry_bound) {
  Int m = abs(v);
  return static_cast<std::size_t>(2 * (entry_bound - m.get_ui()) + (v < 0 ? 1 : 0));
}

namespace detail {

inline SearchResult run_search(const SearchSpec& spec, bool keep_all) {
  if (spec.n < 3) throw domain_error("search: n must be >= 3");
  if (spec.entry_bound < 1) throw domain_error("search: entry bound must be >= 1");
  if (spec.entry_bound > (1ull << 40)) throw capacity_error("search: entry bound too large");
  if (spec.universe.tag == UniverseTag::U && spec.n > kDefaultSubsumPm1Limit)
    throw capacity_error("search: n above the {-1,0,1}-subsum limit");
  if (spec.universe.tag != UniverseTag::U && spec.n > kDefaultSubsum01Limit)
    throw capacity_error("search: n above the {0,1}-subsum limit");
  const Int estimate = search_node_estimate(spec.n, spec.entry_bound);
  if (estimate > spec.node_budget)
    throw capacity_error("search: about " + to_decimal(estimate) + " prefixes exceed the node budget of " +
                         std::to_string(spec.node_budget));

  std::vector<long> values;
  const long b = static_cast<long>(spec.entry_bound);
  for (long m = b; m >= 1; --m) {
    values.push_back(m);
    values.push_back(-m);
  }

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, values.size()));

  std::atomic<std::size_t> next{0};
  std::vector<SearchWorker> workers;
  workers.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) workers.emplace_back(spec, values, keep_all);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i)
    pool.emplace_back([&, i] {
      for (std::size_t f; (f = next.fetch_add(1)) < values.size();) workers[i].run_first(f);
    });
  for (auto& th : pool) th.join();

  SearchResult out;
  for (auto& w : workers) {
    out.nodes += w.nodes;
    out.members += w.members;
    for (auto& h : w.hits) out.top.push_back(std::move(h));
  }
  return out;
}

} // namespace detail

/// Top-k members by exact quality; throws capacity_error before any work if the
/// multiset count exceeds the node budget.
inline SearchResult best_quality(const SearchSpec& spec) {
  SearchResult out = detail::run_search(spec, false);
  std::sort(out.top.begin(), out.top.end(), hit_before);
  if (out.top.size() > spec.top_k) out.top.resize(spec.top_k);
  return out;
}

/// Every canonical member with its quality, in canonical enumeration order.
inline std::vector<SearchHit> enumerate_members(const SearchSpec& spec) {
  SearchResult out = detail::run_search(spec, true);
  const auto b = spec.entry_bound;
  auto key = [b](const SearchHit& h) {
    std::vector<std::size_t> k;
    for (const auto& e : h.tuple.entries()) k.push_back(search_value_index(e, b));
    return k;
  };
  std::sort(out.top.begin(), out.top.end(), [&](const SearchHit& x, const SearchHit& y) { return key(x) < key(y); });
  return std::move(out.top);
}

} // namespace nconj
