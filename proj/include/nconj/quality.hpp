#pragma once

// Tuples, the four universes A(n), B(n), R(n), U(F,n), exact membership
// verification and the quality functional q(a) = ln max|a_i| / ln rad(prod a_i).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nconj/arith.hpp"

namespace nconj {

/// An ordered n-tuple (n >= 3) of nonzero integers.
class Tuple {
public:
  Tuple() = default;
  explicit Tuple(std::vector<Int> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 3) throw domain_error("Tuple: need at least 3 entries");
    for (const auto& e : entries_)
      if (e == 0) throw domain_error("Tuple: entries must be nonzero");
  }
  Tuple(std::initializer_list<long> entries)
      : Tuple(std::vector<Int>(entries.begin(), entries.end())) {}

  std::size_t size() const noexcept { return entries_.size(); }
  const Int& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Int>& entries() const noexcept { return entries_; }

  Int sum() const {
    Int s = 0;
    for (const auto& e : entries_) s += e;
    return s;
  }

  Int max_abs() const {
    Int m = 0;
    for (const auto& e : entries_)
      if (abs(e) > m) m = abs(e);
    return m;
  }

  Tuple negated() const {
    std::vector<Int> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(-e);
    return Tuple(std::move(out));
  }

  friend bool operator==(const Tuple& a, const Tuple& b) { return a.entries_ == b.entries_; }

private:
  std::vector<Int> entries_;
};

/// Finite set of forbidden divisors, each >= 3.
class ForbiddenSet {
public:
  ForbiddenSet() = default;
  explicit ForbiddenSet(std::vector<Int> elements) {
    for (auto& e : elements) {
      if (e < 3) throw domain_error("ForbiddenSet: elements must be >= 3, got " + to_decimal(e));
      elements_.insert(std::move(e));
    }
  }
  ForbiddenSet(std::initializer_list<long> elements)
      : ForbiddenSet(std::vector<Int>(elements.begin(), elements.end())) {}

  bool empty() const noexcept { return elements_.empty(); }
  const std::set<Int>& elements() const noexcept { return elements_; }
  bool contains(const Int& v) const { return elements_.count(v) != 0; }
  Int max() const { return elements_.empty() ? Int(0) : *elements_.rbegin(); }

private:
  std::set<Int> elements_;
};

enum class UniverseTag { A, B, R, U };

struct Universe {
  UniverseTag tag = UniverseTag::U;
  ForbiddenSet forbidden;

  static Universe A() { return {UniverseTag::A, {}}; }
  static Universe B() { return {UniverseTag::B, {}}; }
  static Universe R() { return {UniverseTag::R, {}}; }
  static Universe U(ForbiddenSet f = {}) { return {UniverseTag::U, std::move(f)}; }
};

inline const char* to_string(UniverseTag t) {
  switch (t) {
  case UniverseTag::A: return "A";
  case UniverseTag::B: return "B";
  case UniverseTag::R: return "R";
  case UniverseTag::U: return "U";
  }
  return "?";
}

inline UniverseTag parse_universe_tag(const std::string& s) {
  if (s == "A") return UniverseTag::A;
  if (s == "B") return UniverseTag::B;
  if (s == "R") return UniverseTag::R;
  if (s == "U") return UniverseTag::U;
  throw domain_error("unknown universe '" + s + "' (expected A, B, R or U)");
}

// ---------------------------------------------------------------------------
// Condition checks
// ---------------------------------------------------------------------------

struct SumCheck {
  bool ok = false;
  Int residual;
};

inline SumCheck check_sum_zero(const Tuple& t) {
  Int s = t.sum();
  return {s == 0, s};
}

struct CoprimeCheck {
  bool ok = true;
  /// 0-based indices of the first violating pair.
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  /// gcd of the violating pair, or the setwise gcd.
  Int common = 1;
};

inline CoprimeCheck check_pairwise_coprime(const Tuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      Int g = gcd(t[i], t[j]);
      if (g != 1) return {false, std::make_pair(i, j), g};
    }
  return {};
}

inline CoprimeCheck check_setwise_coprime(const Tuple& t) {
  Int g = 0;
  for (const auto& e : t.entries()) {
    g = gcd(g, e);
    if (g == 1) break;
  }
  return {g == 1, std::nullopt, g};
}

/// Coefficient vector b with some b_i = 0, some b_j = 1 and sum b_k a_k = 0.
struct SubsumWitness {
  std::vector<int> coefficients;
};

struct SubsumCheck {
  bool ok = true;
  std::optional<SubsumWitness> witness;
  std::uint64_t vectors_examined = 0;
};

inline constexpr std::size_t kDefaultSubsum01Limit = 24;
inline constexpr std::size_t kDefaultSubsumPm1Limit = 20;

namespace detail {

// Walks the reflected Gray code over radix^n with the LAST entry as the fastest
// digit, updating the signed sum incrementally. digit -> coefficient maps
// 0 -> 0, 1 -> +1, 2 -> -1.
template <class Value>
SubsumCheck gray_subsum(const std::vector<Value>& a, int radix) {
  const std::size_t n = a.size();
  std::vector<int> digit(n, 0), dir(n, 1);
  auto coef = [](int d) { return d == 0 ? 0 : d == 1 ? 1 : -1; };
  Value sum = 0;
  std::size_t zeros = n, plus = 0;
  SubsumCheck out;
  out.vectors_examined = 1;
  while (true) {
    std::size_t j = 0; // position counted from the last entry
    while (j < n) {
      int nd = digit[j] + dir[j];
      if (nd >= 0 && nd < radix) break;
      dir[j] = -dir[j];
      ++j;
    }
    if (j == n) return out;
    std::size_t idx = n - 1 - j;
    int old_c = coef(digit[j]);
    digit[j] += dir[j];
    int new_c = coef(digit[j]);
    sum += static_cast<Value>(new_c - old_c) * a[idx];
    zeros += (new_c == 0) - (old_c == 0);
    plus += (new_c == 1) - (old_c == 1);
    ++out.vectors_examined;
    if (sum == 0 && zeros > 0 && plus > 0) {
      out.ok = false;
      SubsumWitness w;
      w.coefficients.resize(n);
      for (std::size_t k = 0; k < n; ++k) w.coefficients[n - 1 - k] = coef(digit[k]);
      out.witness = std::move(w);
      return out;
    }
  }
}

inline SubsumCheck subsum(const Tuple& t, int radix, std::size_t limit, const char* what) {
  if (t.size() > limit)
    throw capacity_error(std::string(what) + ": n = " + std::to_string(t.size()) +
                         " exceeds the configured limit " + std::to_string(limit));
  // Sums of at most 24 entries below 2^100 fit comfortably in 128 bits.
  bool narrow = true;
  for (const auto& e : t.entries())
    if (bit_length(e) > 100) { narrow = false; break; }
  if (narrow) {
    std::vector<__int128> a;
    a.reserve(t.size());
    for (const auto& e : t.entries()) {
      auto limb = [&](int k) -> unsigned __int128 {
        return k < static_cast<int>(mpz_size(e.get_mpz_t())) ? mpz_getlimbn(e.get_mpz_t(), k) : 0;
      };
      auto v = static_cast<__int128>(limb(0) | (limb(1) << 64));
      a.push_back(e < 0 ? -v : v);
    }
    return gray_subsum(a, radix);
  }
  return gray_subsum(t.entries(), radix);
}

} // namespace detail

/// ok iff no b in {0,1}^n with some b_i = 0, some b_j = 1 annihilates the tuple.
inline SubsumCheck check_subsum_01(const Tuple& t, std::size_t limit = kDefaultSubsum01Limit) {
  return detail::subsum(t, 2, limit, "check_subsum_01");
}

/// ok iff no b in {-1,0,1}^n with some b_i = 0, some b_j = 1 annihilates the tuple.
inline SubsumCheck check_subsum_pm1(const Tuple& t, std::size_t limit = kDefaultSubsumPm1Limit) {
  return detail::subsum(t, 3, limit, "check_subsum_pm1");
}

struct ForbiddenCheck {
  bool ok = true;
  std::optional<std::size_t> index;
  Int divisor;
};

inline ForbiddenCheck check_forbidden(const Tuple& t, const ForbiddenSet& f) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (const auto& d : f.elements())
      if (divides(d, t[i])) return {false, i, d};
  return {};
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

struct MembershipReport {
  Universe universe;
  bool verdict = false;
  SumCheck sum;
  std::optional<CoprimeCheck> pairwise;
  std::optional<CoprimeCheck> setwise;
  std::optional<SubsumCheck> subsum_01;
  std::optional<SubsumCheck> subsum_pm1;
  std::optional<ForbiddenCheck> forbidden;
};

struct SubsumLimits {
  std::size_t zero_one = kDefaultSubsum01Limit;
  std::size_t plus_minus_one = kDefaultSubsumPm1Limit;
};

/// A(n): sum, {0,1}-subsum, setwise gcd. B(n): sum, pairwise gcd.
/// R(n): sum, {0,1}-subsum, pairwise gcd. U(F,n): sum, {-1,0,1}-subsum, pairwise gcd, F.
inline MembershipReport membership(const Tuple& t, const Universe& u, SubsumLimits limits = {}) {
  MembershipReport r;
  r.universe = u;
  r.sum = check_sum_zero(t);
  bool ok = r.sum.ok;
  switch (u.tag) {
  case UniverseTag::A:
    r.subsum_01 = check_subsum_01(t, limits.zero_one);
    r.setwise = check_setwise_coprime(t);
    ok = ok && r.subsum_01->ok && r.setwise->ok;
    break;
  case UniverseTag::B:
    r.pairwise = check_pairwise_coprime(t);
    ok = ok && r.pairwise->ok;
    break;
  case UniverseTag::R:
    r.subsum_01 = check_subsum_01(t, limits.zero_one);
    r.pairwise = check_pairwise_coprime(t);
    ok = ok && r.subsum_01->ok && r.pairwise->ok;
    break;
  case UniverseTag::U:
    r.subsum_pm1 = check_subsum_pm1(t, limits.plus_minus_one);
    r.pairwise = check_pairwise_coprime(t);
    r.forbidden = check_forbidden(t, u.forbidden);
    ok = ok && r.subsum_pm1->ok && r.pairwise->ok && r.forbidden->ok;
    break;
  }
  r.verdict = ok;
  return r;
}

// ---------------------------------------------------------------------------
// Quality
// ---------------------------------------------------------------------------

enum class Exactness { exact, bounded };

inline const char* to_string(Exactness e) { return e == Exactness::exact ? "exact" : "bounded"; }

struct QualityEstimate {
  std::optional<double> exact;
  double lower_bound = 0.0;
  BigLog ln_max;
  BigLog ln_rad_or_bound;
  Exactness exactness = Exactness::bounded;

  double value() const { return exact ? *exact : lower_bound; }
};

/// Exact quality with the radical taken over the union of prime sets of the entries.
inline QualityEstimate quality_exact(const Tuple& t, const FactorBudget& budget = {}) {
  std::set<Int> primes;
  for (const auto& e : t.entries()) {
    FactoredInteger f = factorize(e, budget);
    if (!f.complete())
      throw inexact_error("quality_exact: could not fully factor " + to_decimal(e) +
                          "; use quality_lower_bound with structural parts");
    for (const auto& [p, k] : f.prime_factors()) primes.insert(p);
  }
  Int rad = 1;
  for (const auto& p : primes) rad *= p;
  if (rad == 1) throw domain_error("quality undefined: radical of the product is 1");
  QualityEstimate q;
  q.ln_max = big_ln(t.max_abs());
  q.ln_rad_or_bound = big_ln(rad);
  q.exact = q.ln_max.value / q.ln_rad_or_bound.value;
  q.lower_bound = *q.exact;
  q.exactness = Exactness::exact;
  return q;
}

/// True when every prime dividing the entry also divides prod |parts|.
inline bool structurally_covered(const Int& entry, const Int& parts_product) {
  Int e = abs(entry);
  while (e != 1) {
    Int g = gcd(e, parts_product);
    if (g == 1) return false;
    e /= g;
  }
  return true;
}

/// Certified lower bound ln max|a_i| / ln radical_upper_bound(parts). The parts
/// must cover every prime of the entries; this is checked exactly.
inline QualityEstimate quality_lower_bound(const Tuple& t, const std::vector<FactoredInteger>& parts) {
  if (parts.empty()) throw domain_error("quality_lower_bound: structural parts must be nonempty");
  Int product = 1;
  for (const auto& p : parts) product *= abs(p.value);
  for (const auto& e : t.entries())
    if (!structurally_covered(e, product))
      throw domain_error("quality_lower_bound: structural parts do not cover the primes of " +
                         to_decimal(e));
  Int bound = radical_upper_bound(parts);
  if (bound == 1) throw domain_error("quality undefined: radical bound is 1");
  QualityEstimate q;
  q.ln_max = big_ln(t.max_abs());
  q.ln_rad_or_bound = big_ln(bound);
  q.lower_bound = q.ln_max.value / q.ln_rad_or_bound.value;
  q.exactness = Exactness::bounded;
  return q;
}

struct SeriesRow {
  QualityEstimate estimate;
  double running_max = 0.0;
};

struct SeriesInput {
  Tuple tuple;
  std::vector<FactoredInteger> parts; // empty: use the exact quality
};

/// Per-tuple estimates and their running maximum (finite proxy for the limsup).
inline std::vector<SeriesRow> quality_series(const std::vector<SeriesInput>& inputs,
                                             const FactorBudget& budget = {}) {
  std::vector<SeriesRow> rows;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& in : inputs) {
    SeriesRow row;
    row.estimate = in.parts.empty() ? quality_exact(in.tuple, budget)
                                    : quality_lower_bound(in.tuple, in.parts);
    best = std::max(best, row.estimate.value());
    row.running_max = best;
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace nconj
