#pragma once

// Generators for the tuple families, the factor-avoiding split and the Pell iterator.
//
// Every generator returns a FamilyInstance: the tuple, a structural divisor
// decomposition (every prime of the entries divides the product of the parts),
// the parameters that produced it, and the membership report of the generator's
// own verification run. Generators refuse to return tuples their verifier rejects.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "nconj/arith.hpp"
#include "nconj/polyident.hpp"
#include "nconj/quality.hpp"

namespace nconj {

enum class GeneratorMode { faithful, certified };

inline const char* to_string(GeneratorMode m) { return m == GeneratorMode::faithful ? "faithful" : "certified"; }

// ---------------------------------------------------------------------------
// Factor-avoiding split
// ---------------------------------------------------------------------------

struct SplitResult {
  Int v;
  Int w;
  Int u;
  std::uint64_t m = 0;
  Int primorial_q;

  /// q < v is not guaranteed; it is reported only.
  bool v_exceeds_q() const { return v > primorial_q; }

  /// Postconditions that must hold; returns a description per violation.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    if (v + w != u) out.push_back("v + w != u");
    if (w > 0) out.push_back("w > 0");
    if (w % 2 == 0) out.push_back("w even");
    if (v <= 0) out.push_back("v <= 0");
    if (v > abs(w)) out.push_back("v > |w|");
    if (gcd(v, w) != 1) out.push_back("gcd(v, w) != 1");
    if (abs(w) > Int(m + 1) * primorial_q) out.push_back("|w| > (m+1) q");
    for (std::uint64_t f = 3; f <= m; ++f)
      if (divides(Int(f), v) || divides(Int(f), w)) {
        out.push_back("divisible by " + std::to_string(f));
        break;
      }
    return out;
  }
};

/// Splits u < 0 into v + w with v > 0, w <= 0 odd, gcd(v, w) = 1 and no element
/// of {3, ..., m} dividing v or w, by walking v, w in steps of q/p.
inline SplitResult split_avoiding_factors(const Int& u, std::uint64_t m) {
  if (!(u < 0)) throw domain_error("split_avoiding_factors: u must be negative");
  if (m < 2 || Int(m) < abs(u)) throw domain_error("split_avoiding_factors: need m >= max(2, |u|)");
  if (m > 1'000'000) throw capacity_error("split_avoiding_factors: m above 10^6 (primorial too large)");
  SplitResult r;
  r.u = u;
  r.m = m;
  r.primorial_q = primorial(m);
  const Int& q = r.primorial_q;
  r.v = u + 1 + q;
  r.w = -q - 1;
  for (std::uint32_t p : detail::primes_below_or_equal(m)) {
    if (p < 3) continue;
    Int step = q / p;
    while (mpz_divisible_ui_p(r.v.get_mpz_t(), p) || mpz_divisible_ui_p(r.w.get_mpz_t(), p)) {
      r.v += step;
      r.w -= step;
    }
  }
  if (mpz_divisible_ui_p(r.v.get_mpz_t(), 4)) {
    r.v += q;
    r.w -= q;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Pell solutions of y^2 s^2 - (y^2 + 1) t^2 = -1
// ---------------------------------------------------------------------------

struct PellSolution {
  Int y, s, t;
  unsigned long index = 0;

  bool satisfies() const { return y * y * s * s - (y * y + 1) * t * t == -1; }
};

/// Unbounded cursor over the solutions in increasing order, starting at (1, 1).
/// Iterates (u, t) with u = y s: (u, t) <- (u(2y^2+1) + 2ty(y^2+1), 2uy + t(2y^2+1)).
class PellIterator {
public:
  explicit PellIterator(Int y) : y_(std::move(y)) {
    if (y_ < 1) throw domain_error("PellIterator: y must be >= 1");
  }

  PellSolution next() {
    if (index_ == 0) {
      u_ = y_;
      t_ = 1;
    } else {
      const Int y2 = y_ * y_;
      const Int c = 2 * y2 + 1;
      Int u = u_ * c + 2 * t_ * y_ * (y2 + 1);
      Int t = 2 * u_ * y_ + t_ * c;
      u_ = std::move(u);
      t_ = std::move(t);
    }
    ++index_;
    return {y_, Int(u_ / y_), t_, index_};
  }

private:
  Int y_;
  Int u_, t_;
  unsigned long index_ = 0;
};

inline PellSolution pell_solution(const Int& y, unsigned long index) {
  if (index < 1) throw domain_error("pell_solution: index must be >= 1");
  PellIterator it(y);
  PellSolution s;
  for (unsigned long i = 0; i < index; ++i) s = it.next();
  return s;
}

// ---------------------------------------------------------------------------
// y-selection sieve
// ---------------------------------------------------------------------------

/// Returns y such that no prime 5 <= q <= b divides y, y+z0, y+z1, y+z2 and
/// neither 2 nor 3 divides y or y+z0. Requires 6 | z0.
inline Int select_y(const Int& z0, const Int& z1, const Int& z2, std::uint64_t b) {
  if (b < 5) throw domain_error("select_y: b must be >= 5");
  if (b > 100'000) throw capacity_error("select_y: b above 10^5");
  if (!divides(Int(6), z0)) throw domain_error("select_y: 6 does not divide z0");
  const Int r = primorial(b);
  Int y = 1;
  for (std::uint32_t q : detail::primes_below_or_equal(b)) {
    if (q < 5) continue;
    const Int step = r / q;
    bool moved = false;
    for (int i = 0; i <= 4 && !moved; ++i) {
      Int cand = y + i * step;
      auto hit = [&](const Int& v) { return mpz_divisible_ui_p(v.get_mpz_t(), q) != 0; };
      if (!hit(cand) && !hit(cand + z0) && !hit(cand + z1) && !hit(cand + z2)) {
        y = cand;
        moved = true;
      }
    }
    if (!moved) throw std::logic_error("select_y: no admissible shift for q = " + std::to_string(q));
  }
  return y;
}

// ---------------------------------------------------------------------------
// Family instances
// ---------------------------------------------------------------------------

enum class YPolicy { factorial_faithful, minimal_multiple };
enum class ExponentPolicy { magnitude, orders };
enum class SPolicy { minimal, factorial };

inline const char* to_string(YPolicy p) {
  return p == YPolicy::factorial_faithful ? "factorial-faithful" : "minimal-multiple";
}
inline const char* to_string(ExponentPolicy p) { return p == ExponentPolicy::magnitude ? "magnitude" : "orders"; }
inline const char* to_string(SPolicy p) { return p == SPolicy::minimal ? "minimal" : "factorial"; }

struct KonyaginParams {
  unsigned k = 1;
};

struct OddParams {
  unsigned n = 5;
  ForbiddenSet forbidden;
  unsigned long pell_index = 1;
  YPolicy y_policy = YPolicy::minimal_multiple;
  Int a_hat_4, split_m, a_hat_n, y, s, t, x;
  SplitResult split;
};

struct GeneralParams {
  unsigned n = 6;
  ForbiddenSet forbidden;
  SPolicy s_policy = SPolicy::minimal;
  ExponentPolicy exponent_policy = ExponentPolicy::magnitude;
  Int s, t, y, u, v, w;
  unsigned long exponent = 0;
  unsigned long exponent_min = 0;
  unsigned long exponent_multiple = 1;
  Int order_lcm; // 0 unless the orders policy ran
  unsigned attempts = 0;
};

struct NineFifthsParams {
  Int ell;
  unsigned long h = 1;
  Int x;
};

struct QuadrupleParams {
  unsigned long h = 1;
};

struct GeometricParams {
  unsigned n = 3;
  Int y;
};

using FamilyParams =
    std::variant<KonyaginParams, OddParams, GeneralParams, NineFifthsParams, QuadrupleParams, GeometricParams>;

struct FamilyInstance {
  std::string family;
  Tuple tuple;
  std::vector<FactoredInteger> structural_parts;
  FamilyParams params;
  GeneratorMode mode = GeneratorMode::certified;
  Universe target;
  MembershipReport report;

  std::vector<Int> part_values() const {
    std::vector<Int> out;
    for (const auto& p : structural_parts) out.push_back(p.value);
    return out;
  }
};

/// Upper limit on entry width for generated tuples.
struct SizeCaps {
  std::size_t max_entry_bits = std::size_t{1} << 27;
};

namespace detail {

inline std::vector<FactoredInteger> factor_parts(const std::vector<Int>& values) {
  std::vector<FactoredInteger> out;
  out.reserve(values.size());
  const auto budget = FactorBudget::structural();
  for (const auto& v : values) out.push_back(factorize(v, budget));
  return out;
}

inline MembershipReport verify_or_throw(const std::string& family, const Tuple& t, const Universe& u) {
  MembershipReport r = membership(t, u);
  if (!r.verdict) throw verification_error(family + ": generated tuple failed membership in " + to_string(u.tag));
  return r;
}

inline void check_bits(const std::string& family, double projected_bits, const SizeCaps& caps) {
  if (projected_bits > static_cast<double>(caps.max_entry_bits))
    throw capacity_error(family + ": projected entry width " + std::to_string(static_cast<long long>(projected_bits)) +
                         " bits exceeds the cap of " + std::to_string(caps.max_entry_bits));
}

inline double log2_of(const Int& v) { return big_ln(v).value / std::log(2.0); }

} // namespace detail

/// ((6^(2^k)+1)^3, -(6^(2^k)-1)^3, -6 (6^(2^k))^2, -31, 29) in U(empty, 5).
inline FamilyInstance konyagin_quintuple(unsigned k, const SizeCaps& caps = {}) {
  if (k < 1) throw domain_error("konyagin_quintuple: k must be >= 1");
  detail::check_bits("konyagin", 3.0 * std::ldexp(1.0, static_cast<int>(k)) * std::log2(6.0), caps);
  const Int s = pow(Int(6), 1ul << k);
  FamilyInstance fi;
  fi.family = "konyagin";
  fi.tuple = Tuple({pow(Int(s + 1), 3), Int(-pow(Int(s - 1), 3)), Int(-6 * s * s), Int(-31), Int(29)});
  fi.structural_parts = detail::factor_parts({s + 1, s - 1, Int(6), Int(31), Int(29)});
  fi.params = KonyaginParams{k};
  fi.mode = GeneratorMode::faithful;
  fi.target = Universe::U();
  fi.report = detail::verify_or_throw(fi.family, fi.tuple, fi.target);
  return fi;
}

/// 5/3 family: ((x-1)^5, 10(x^2+1)^2, -(x+1)^5, a_4, ..., a_n) for odd n >= 5 with
/// x = y s from the Pell equation.
inline FamilyInstance odd_family(unsigned n, const ForbiddenSet& forbidden, unsigned long pell_index,
                                 YPolicy y_policy = YPolicy::minimal_multiple, const SizeCaps& caps = {}) {
  if (n < 5 || n % 2 == 0) throw domain_error("odd_family: n must be odd and >= 5");
  if (forbidden.contains(Int(5)) || forbidden.contains(Int(10)))
    throw domain_error("odd_family: F must not contain 2, 5 or 10");
  if (pell_index < 1) throw domain_error("odd_family: pell index must be >= 1");

  OddParams p;
  p.n = n;
  p.forbidden = forbidden;
  p.pell_index = pell_index;
  p.y_policy = y_policy;
  p.a_hat_4 = forbidden.empty() ? Int(24) : Int(3 * (8 + forbidden.max()));

  // a_4 .. a_{n-2}: primes, each above the previous bound; the bound triples.
  std::vector<Int> tail;
  Int a_hat = p.a_hat_4;
  for (unsigned i = 4; i + 2 <= n; ++i) {
    Int a = next_prime_above(a_hat);
    tail.push_back(a);
    a_hat = 3 * a;
  }
  // a_hat is now a_hat_{n-1}, which is a_hat_4 when n = 5.
  p.split_m = a_hat;
  Int u = -8;
  for (const auto& a : tail) u -= a;
  if (!a_hat.fits_ulong_p()) throw capacity_error("odd_family: split bound too large");
  p.split = split_avoiding_factors(u, a_hat.get_ui());
  tail.push_back(p.split.v);
  tail.push_back(p.split.w);

  Int abs_sum = 0;
  for (const auto& a : tail) abs_sum += abs(a);
  p.a_hat_n = 3 * (abs(p.split.v) + abs(p.split.w));

  if (y_policy == YPolicy::factorial_faithful) {
    if (p.a_hat_n > 3000)
      throw capacity_error("odd_family: factorial-faithful y = " + to_decimal(p.a_hat_n) + "! is not materializable");
    mpz_fac_ui(p.y.get_mpz_t(), p.a_hat_n.get_ui());
  } else {
    Int l = 10;
    for (const auto& f : forbidden.elements()) l = lcm(l, f);
    for (const auto& a : tail) l = lcm(l, a);
    Int threshold = 3 * (8 + abs_sum);
    p.y = (threshold / l + 1) * l;
  }

  detail::check_bits("odd", 5.0 * (2.0 * static_cast<double>(pell_index) + 1.0) * (detail::log2_of(p.y) + 2.0), caps);
  PellSolution sol = pell_solution(p.y, pell_index);
  p.s = sol.s;
  p.t = sol.t;
  p.x = p.y * p.s;
  const Int& x = p.x;

  std::vector<Int> entries{pow(Int(x - 1), 5), Int(10 * pow(Int(x * x + 1), 2)), Int(-pow(Int(x + 1), 5))};
  entries.insert(entries.end(), tail.begin(), tail.end());

  std::vector<Int> parts{x - 1, x + 1, Int(10), pow(Int(p.y * p.y + 1), 2), pow(p.t, 4)};
  parts.insert(parts.end(), tail.begin(), tail.end());

  FamilyInstance fi;
  fi.family = "odd";
  fi.tuple = Tuple(std::move(entries));
  fi.structural_parts = detail::factor_parts(parts);
  fi.mode = y_policy == YPolicy::factorial_faithful ? GeneratorMode::faithful : GeneratorMode::certified;
  fi.target = Universe::U(forbidden);
  fi.report = detail::verify_or_throw(fi.family, fi.tuple, fi.target);
  fi.params = std::move(p);
  return fi;
}

struct GeneralScale {
  SPolicy s_policy = SPolicy::minimal;
  unsigned long ell = 11; ///< s = ell! under the factorial policy
  ExponentPolicy exponent_policy = ExponentPolicy::magnitude;
  unsigned long exponent_multiple = 64;
  unsigned max_exponent_attempts = 64;
  std::uint64_t split_search_limit = 1'000'000;
  SizeCaps caps;
};

namespace detail {

struct GeneralSetup {
  Int s, t, y, u, v, w;
  std::vector<Int> negative_primes; // a_7 .. a_n
};

inline Int general_s(const ForbiddenSet& forbidden, SPolicy policy, unsigned long ell) {
  std::set<Int> primes{Int(2), Int(3), Int(11)};
  for (const auto& f : forbidden.elements()) {
    FactoredInteger ff = factorize(f);
    if (!ff.complete()) throw budget_error("general_family: cannot factor forbidden element " + to_decimal(f));
    for (const auto& [p, e] : ff.prime_factors()) primes.insert(p);
  }
  if (policy == SPolicy::minimal) {
    Int s = 1;
    for (const auto& p : primes) s = lcm(s, p);
    return s;
  }
  if (ell < 11) throw domain_error("general_family: factorial policy needs ell >= 11");
  for (const auto& p : primes)
    if (p > ell) throw domain_error("general_family: ell! misses the prime " + to_decimal(p) + " of F");
  if (ell > 5000) throw capacity_error("general_family: ell too large");
  Int s;
  mpz_fac_ui(s.get_mpz_t(), ell);
  return s;
}

inline GeneralSetup general_setup(unsigned n, const ForbiddenSet& forbidden, const GeneralScale& scale) {
  GeneralSetup g;
  g.s = general_s(forbidden, scale.s_policy, scale.ell);
  g.t = next_prime_above(Int(101));
  while (divides(g.t, g.s)) g.t = next_prime_above(g.t);
  g.y = g.s * g.t;
  const Int& y = g.y;

  Int bound = 200 * pow(y, 6);
  for (unsigned k = 7; k <= n; ++k) {
    Int p = next_prime_above(bound, PrimePolicy::odd);
    g.negative_primes.push_back(-p);
    bound = 2 * p;
  }
  g.u = 2 * pow(y, 5) - 100 * pow(y, 6);
  for (const auto& a : g.negative_primes) g.u += a;
  return g;
}

// v + w = u with w odd, gcd(v, w) = 1, v >= 2|u|, no element of F dividing
// either, and both coprime to 10y-1, y+1 and the a_k (k >= 7).
inline void general_split_search(GeneralSetup& g, const ForbiddenSet& forbidden, std::uint64_t limit) {
  const Int fixed = (10 * g.y - 1) * (g.y + 1);
  Int v = 2 * abs(g.u);
  for (std::uint64_t step = 0; step < limit; ++step, v += 1) {
    Int w = g.u - v;
    if (w % 2 == 0) continue;
    if (gcd(v, w) != 1) continue;
    if (gcd(v * w, fixed) != 1) continue;
    bool ok = true;
    for (const auto& f : forbidden.elements())
      if (divides(f, v) || divides(f, w)) { ok = false; break; }
    for (const auto& a : g.negative_primes)
      if (!ok || gcd(v, a) != 1 || gcd(w, a) != 1) { ok = false; break; }
    if (!ok) continue;
    g.v = v;
    g.w = w;
    return;
  }
  throw verification_error("general_family: no admissible (v, w) within " + std::to_string(limit) + " candidates");
}

} // namespace detail

/// 5/4 family in certified mode: ((x+y)^5, -(x-y)^5, -(10y-1)x^4, -(x^2+10y^3)^2,
/// a_5, ..., a_n) with x = (y+1)^e, verified exactly before it is returned.
inline FamilyInstance general_family(unsigned n, const ForbiddenSet& forbidden, const GeneralScale& scale = {}) {
  if (n < 6) throw domain_error("general_family: n must be >= 6");
  if (scale.exponent_multiple < 1) throw domain_error("general_family: exponent multiple must be >= 1");
  if (n > kDefaultSubsumPm1Limit) throw capacity_error("general_family: n above the subsum verification limit");

  detail::GeneralSetup g = detail::general_setup(n, forbidden, scale);
  detail::general_split_search(g, forbidden, scale.split_search_limit);
  const Int& y = g.y;
  const Int y1 = y + 1;

  std::vector<Int> tail{Int(-g.v), Int(-g.w)};
  tail.insert(tail.end(), g.negative_primes.begin(), g.negative_primes.end());
  Int dominated = 0;
  for (const auto& a : tail) dominated += abs(a);

  GeneralParams p;
  p.n = n;
  p.forbidden = forbidden;
  p.s_policy = scale.s_policy;
  p.exponent_policy = scale.exponent_policy;
  p.s = g.s;
  p.t = g.t;
  p.y = y;
  p.u = g.u;
  p.v = g.v;
  p.w = g.w;
  p.exponent_multiple = scale.exponent_multiple;
  p.order_lcm = 0;

  unsigned long e_min = 1;
  while (pow(y1, e_min) <= dominated) ++e_min;
  p.exponent_min = e_min;

  unsigned long e = 0, bump = 1;
  if (scale.exponent_policy == ExponentPolicy::magnitude) {
    e = e_min * scale.exponent_multiple;
  } else {
    Int o = lcm(multiplicative_order(y1, 10 * y - 1), multiplicative_order(y1, 10 * y + 1));
    p.order_lcm = o;
    if (!o.fits_ulong_p()) throw capacity_error("general_family: order lcm too large");
    unsigned long ou = o.get_ui();
    unsigned long f = (e_min + ou - 1) / ou;
    e = ou * f * scale.exponent_multiple;
    bump = ou;
  }

  const double bits_per_e = 5.0 * detail::log2_of(y1);
  for (unsigned attempt = 1; attempt <= scale.max_exponent_attempts; ++attempt, e += bump) {
    detail::check_bits("general", bits_per_e * static_cast<double>(e), scale.caps);
    const Int x = pow(y1, e);
    const Int c4 = x * x + 10 * pow(y, 3);
    std::vector<Int> entries{pow(Int(x + y), 5), Int(-pow(Int(x - y), 5)), Int(-(10 * y - 1) * pow(x, 4)),
                             Int(-c4 * c4)};
    entries.insert(entries.end(), tail.begin(), tail.end());
    Tuple t(std::move(entries));
    MembershipReport r = membership(t, Universe::U(forbidden));
    if (!r.verdict) continue;

    p.exponent = e;
    p.attempts = attempt;
    std::vector<Int> parts{x + y, x - y, 10 * y - 1, y1, c4};
    parts.insert(parts.end(), tail.begin(), tail.end());

    FamilyInstance fi;
    fi.family = "general";
    fi.tuple = std::move(t);
    fi.structural_parts = detail::factor_parts(parts);
    fi.mode = GeneratorMode::certified;
    fi.target = Universe::U(forbidden);
    fi.report = std::move(r);
    fi.params = std::move(p);
    return fi;
  }
  throw verification_error("general_family: no exponent passed verification within " +
                           std::to_string(scale.max_exponent_attempts) + " attempts");
}

/// Parameter report for the full-scale recipe (s = ell!, x = (y+1)^(h!), split
/// bound m = -4u). Nothing here is materialized.
struct GeneralDryRun {
  unsigned n = 6;
  Int s, t, y, u;
  Int order_minus, order_plus; ///< orders of y+1 modulo 10y-1 and 10y+1
  unsigned long h = 0;         ///< least h with h >= both orders would be h = max(order_minus, order_plus)
  Int split_m;                 ///< -4u
  double log10_primorial_m = 0.0;
  double log10_x = 0.0;        ///< log10 of (y+1)^(h!)
};

inline GeneralDryRun general_family_dry_run(unsigned n, const ForbiddenSet& forbidden, unsigned long ell) {
  if (n < 6) throw domain_error("general_family: n must be >= 6");
  GeneralScale scale;
  scale.s_policy = SPolicy::factorial;
  scale.ell = ell;
  detail::GeneralSetup g = detail::general_setup(n, forbidden, scale);
  GeneralDryRun d;
  d.n = n;
  d.s = g.s;
  d.t = g.t;
  d.y = g.y;
  d.u = g.u;
  d.order_minus = multiplicative_order(g.y + 1, 10 * g.y - 1);
  d.order_plus = multiplicative_order(g.y + 1, 10 * g.y + 1);
  Int h = d.order_minus > d.order_plus ? d.order_minus : d.order_plus;
  d.h = h.fits_ulong_p() ? h.get_ui() : 0;
  d.split_m = -4 * g.u;
  // theta(m) ~ m, so ln primorial(m) ~ m.
  d.log10_primorial_m = big_ln(d.split_m).value > 0 ? mpz_get_d(d.split_m.get_mpz_t()) / std::log(10.0) : 0.0;
  d.log10_x = std::lgamma(static_cast<double>(d.h) + 1.0) / std::log(10.0) + std::log10(big_ln(g.y + 1).value) +
              std::log10(1.0 / std::log(10.0));
  return d;
}

struct PairGcd {
  std::size_t i = 0, j = 0;
  Int gcd;
};

struct NineFifthsReport {
  std::vector<PairGcd> pairs;
  /// every pairwise gcd divides one of 608, 1890, 5712, 214704
  bool exact_divisor_claim = true;
  /// every prime of every pairwise gcd divides one of them
  bool prime_support_claim = true;
  Int setwise_gcd;
  std::vector<PairGcd> exact_violations;
};

inline const std::vector<Int>& nine_fifths_divisor_bounds() {
  static const std::vector<Int> e{Int(608), Int(1890), Int(5712), Int(214704)};
  return e;
}

inline NineFifthsReport nine_fifths_gcd_report(const Tuple& t) {
  NineFifthsReport r;
  const auto& bounds = nine_fifths_divisor_bounds();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      Int g = gcd(t[i], t[j]);
      r.pairs.push_back({i, j, g});
      bool exact = false, support = false;
      for (const auto& b : bounds) {
        if (divides(g, b)) exact = true;
        if (structurally_covered(g, b)) support = true;
      }
      if (!exact) {
        r.exact_divisor_claim = false;
        r.exact_violations.push_back({i, j, g});
      }
      if (!support) r.prime_support_claim = false;
    }
  r.setwise_gcd = check_setwise_coprime(t).common;
  return r;
}

/// (189(x+1)^9, -189(x-1)^9, -42(3x^2+7)^4, 16(63x^2+79)^2, 608) with x = ell^h - 1.
/// Verified for sum zero, the {-1,0,1}-subsum condition and setwise gcd 1.
inline std::pair<FamilyInstance, NineFifthsReport> nine_fifths_family(const Int& ell, unsigned long h,
                                                                      const SizeCaps& caps = {}) {
  if (ell < 3 || ell % 2 == 0 || !is_probable_prime(ell)) throw domain_error("nine_fifths_family: ell must be an odd prime");
  if (h < 1) throw domain_error("nine_fifths_family: h must be >= 1");
  detail::check_bits("nine-fifths", 9.0 * static_cast<double>(h) * detail::log2_of(ell) + 8.0, caps);
  const Int x = pow(ell, h) - 1;
  const Int q3 = 3 * x * x + 7, q63 = 63 * x * x + 79;
  FamilyInstance fi;
  fi.family = "nine-fifths";
  fi.tuple = Tuple({Int(189 * pow(Int(x + 1), 9)), Int(-189 * pow(Int(x - 1), 9)), Int(-42 * pow(q3, 4)),
                    Int(16 * pow(q63, 2)), Int(608)});
  fi.structural_parts = detail::factor_parts({Int(189), Int(42), Int(16), Int(608), ell, x - 1, q3, q63});
  fi.params = NineFifthsParams{ell, h, x};
  fi.mode = GeneratorMode::faithful;
  fi.target = Universe::A();
  fi.report = detail::verify_or_throw(fi.family, fi.tuple, fi.target);
  if (!check_subsum_pm1(fi.tuple).ok)
    throw verification_error("nine-fifths: {-1,0,1}-subsum condition failed");
  NineFifthsReport rep = nine_fifths_gcd_report(fi.tuple);
  if (rep.setwise_gcd != 1) throw verification_error("nine-fifths: setwise gcd is not 1");
  return {std::move(fi), std::move(rep)};
}

/// ((2^h+1)^3, -2^(3h), -3 2^h (2^h+1), -1) in A(4).
inline FamilyInstance an_quadruple(unsigned long h, const SizeCaps& caps = {}) {
  if (h < 1) throw domain_error("an_quadruple: h must be >= 1");
  detail::check_bits("an-quadruple", 3.0 * static_cast<double>(h) + 3.0, caps);
  const Int p = pow(Int(2), h);
  FamilyInstance fi;
  fi.family = "an-quadruple";
  fi.tuple = Tuple({pow(Int(p + 1), 3), Int(-pow(p, 3)), Int(-3 * p * (p + 1)), Int(-1)});
  fi.structural_parts = detail::factor_parts({Int(2), Int(3), p + 1});
  fi.params = QuadrupleParams{h};
  fi.mode = GeneratorMode::faithful;
  fi.target = Universe::A();
  fi.report = detail::verify_or_throw(fi.family, fi.tuple, fi.target);
  return fi;
}

/// (y^(n-2), -x y^(n-3), ..., -x y, -x, -1) with x = y - 1; telescopes to zero.
inline FamilyInstance geometric_family(unsigned n, const Int& y, const SizeCaps& caps = {}) {
  if (n < 3) throw domain_error("geometric_family: n must be >= 3");
  if (y < 2) throw domain_error("geometric_family: y must be >= 2");
  detail::check_bits("geometric", static_cast<double>(n) * detail::log2_of(y), caps);
  const Int x = y - 1;
  std::vector<Int> entries{pow(y, n - 2)};
  for (long j = static_cast<long>(n) - 3; j >= 0; --j) entries.push_back(-x * pow(y, static_cast<unsigned long>(j)));
  entries.push_back(Int(-1));
  FamilyInstance fi;
  fi.family = "geometric";
  fi.tuple = Tuple(std::move(entries));
  if (fi.tuple.sum() != 0) throw std::logic_error("geometric_family: telescoping identity failed");
  fi.structural_parts = detail::factor_parts({y, x});
  fi.params = GeometricParams{n, y};
  fi.mode = GeneratorMode::faithful;
  fi.target = Universe::A();
  fi.report = detail::verify_or_throw(fi.family, fi.tuple, fi.target);
  return fi;
}

} // namespace nconj
