#pragma once

// Naive reference for the search module: walk every ordered tuple in
// [-B, B]^(n-1), close it with the negated sum, canonicalize by sorting and
// picking the smaller of t and -t, deduplicate, then filter by membership.

#include <algorithm>
#include <cstdlib>
#include <set>
#include <vector>

#include "nconj/quality.hpp"

namespace reference {

inline long rank_of(long v, long b) { return 2 * (b - std::labs(v)) + (v < 0 ? 1 : 0); }

inline std::vector<long> canonical(std::vector<long> t, long b) {
  auto key = [b](std::vector<long> v) {
    std::vector<long> k;
    for (long x : v) k.push_back(rank_of(x, b));
    std::sort(k.begin(), k.end());
    return k;
  };
  std::vector<long> neg(t);
  for (auto& x : neg) x = -x;
  auto kt = key(t), kn = key(neg);
  const auto& k = std::min(kt, kn);
  std::vector<long> out;
  for (long r : k) out.push_back(r % 2 == 0 ? b - r / 2 : -(b - r / 2));
  return out;
}

inline std::set<std::vector<long>> members(unsigned n, long b, const nconj::Universe& u) {
  std::set<std::vector<long>> seen, out;
  std::vector<long> cur(n - 1, -b);
  while (true) {
    long s = 0;
    bool zero = false;
    for (long x : cur) {
      s += x;
      zero = zero || x == 0;
    }
    if (!zero && s != 0 && std::labs(s) <= b) {
      std::vector<long> t(cur);
      t.push_back(-s);
      auto c = canonical(t, b);
      // All entries +-1: radical 1, quality undefined, never reported.
      bool units = std::all_of(c.begin(), c.end(), [](long x) { return std::labs(x) == 1; });
      if (!units && seen.insert(c).second) {
        nconj::Tuple tt(std::vector<nconj::Int>(c.begin(), c.end()));
        if (nconj::membership(tt, u).verdict) out.insert(c);
      }
    }
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == b) cur[i++] = -b;
    if (i == cur.size()) break;
    ++cur[i];
  }
  return out;
}

} // namespace reference
