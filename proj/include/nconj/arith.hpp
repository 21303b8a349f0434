#pragma once

// Arbitrary-precision number theory on top of GMP: gcd, modular powers,
// Miller-Rabin, budgeted factorization (trial division, perfect powers,
// Pollard-Brent rho), radicals, multiplicative orders, primorials, logs.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nconj/errors.hpp"

namespace nconj {

using Int = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Elementary operations
// ---------------------------------------------------------------------------

/// Greatest common divisor, always nonnegative; gcd(0, 0) = 0.
inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int pow(const Int& base, unsigned long exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline bool divides(const Int& d, const Int& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::size_t bit_length(const Int& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

/// base^exponent mod modulus, result in [0, modulus).
inline Int mod_pow(const Int& base, const Int& exponent, const Int& modulus) {
  if (modulus < 2) throw domain_error("mod_pow: modulus must be >= 2");
  if (exponent < 0) throw domain_error("mod_pow: exponent must be >= 0");
  Int b = base % modulus;
  if (b < 0) b += modulus;
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

/// Decimal rendering, never scientific notation.
inline std::string to_decimal(const Int& n) { return n.get_str(10); }

/// Parses an optionally signed decimal string; throws domain_error otherwise.
inline Int parse_decimal(const std::string& s) {
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw domain_error("not a decimal integer: '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw domain_error("not a decimal integer: '" + s + "'");
  Int r;
  if (r.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
    throw domain_error("not a decimal integer: '" + s + "'");
  return r;
}

// ---------------------------------------------------------------------------
// Prime sieve
// ---------------------------------------------------------------------------

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

namespace detail {

inline constexpr std::uint64_t kSmallSieveLimit = 1 << 14;
inline constexpr std::uint64_t kSieveLimit = 1'000'000;

template <std::uint64_t Limit>
constexpr std::array<bool, Limit + 1> compile_time_sieve() {
  std::array<bool, Limit + 1> composite{};
  composite[0] = composite[1] = true;
  for (std::uint64_t i = 2; i * i <= Limit; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= Limit; j += i) composite[j] = true;
  return composite;
}

template <std::uint64_t Limit>
constexpr std::size_t compile_time_prime_count() {
  const auto composite = compile_time_sieve<Limit>();
  std::size_t n = 0;
  for (bool c : composite) n += !c;
  return n;
}

template <std::uint64_t Limit>
constexpr auto compile_time_primes() {
  const auto composite = compile_time_sieve<Limit>();
  std::array<std::uint32_t, compile_time_prime_count<Limit>()> out{};
  std::size_t n = 0;
  for (std::uint64_t i = 0; i <= Limit; ++i)
    if (!composite[i]) out[n++] = static_cast<std::uint32_t>(i);
  return out;
}

inline const std::vector<std::uint32_t>& small_primes() {
  static constexpr auto table = compile_time_primes<kSmallSieveLimit>();
  static const std::vector<std::uint32_t> primes(table.begin(), table.end());
  return primes;
}

inline const std::vector<std::uint32_t>& base_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(kSieveLimit);
  return primes;
}

// Primes below the given limit; reuses the cached sieves when they are large enough.
inline std::vector<std::uint32_t> primes_below_or_equal(std::uint64_t limit) {
  if (limit <= kSmallSieveLimit) {
    const auto& small = small_primes();
    return {small.begin(), std::upper_bound(small.begin(), small.end(), limit)};
  }
  const auto& base = base_primes();
  if (limit <= kSieveLimit) {
    auto end = std::upper_bound(base.begin(), base.end(), limit);
    return {base.begin(), end};
  }
  return primes_up_to(limit);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

/// Miller-Rabin with the first 13 prime bases is deterministic below this bound
/// (Sorenson-Webster). Above it a fixed-seed set of 64 random bases is used.
inline const Int& deterministic_prime_threshold() {
  static const Int t("3317044064679887385961981", 10);
  return t;
}

namespace detail {

inline bool miller_rabin_round(const Int& n, const Int& n_minus_1, const Int& d, unsigned long r,
                               const Int& a) {
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

} // namespace detail

/// Never false for a prime. Deterministic below deterministic_prime_threshold();
/// above it the error probability is below 4^-64 = 2^-128.
inline bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  static constexpr std::uint32_t kSmall[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                             41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (std::uint32_t p : kSmall) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 97 * 97) return true;

  Int n_minus_1 = n - 1;
  Int d = n_minus_1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

  if (n < deterministic_prime_threshold()) {
    for (unsigned long b : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul})
      if (!detail::miller_rabin_round(n, n_minus_1, d, r, Int(b))) return false;
    return true;
  }
  if (!detail::miller_rabin_round(n, n_minus_1, d, r, Int(2))) return false;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x6e636f6e6aUL);
  Int span = n - 3;
  for (int i = 0; i < 64; ++i) {
    Int a = rng.get_z_range(span) + 2;
    if (!detail::miller_rabin_round(n, n_minus_1, d, r, a)) return false;
  }
  return true;
}

/// True when is_probable_prime(n) is a proof for this n.
inline bool primality_is_proven(const Int& n) { return n < deterministic_prime_threshold(); }

enum class PrimePolicy {
  any,         ///< least prime > n
  odd,         ///< least odd prime > n
  odd_negated  ///< least odd prime > n, returned negated
};

inline Int next_prime_above(const Int& n, PrimePolicy policy = PrimePolicy::any) {
  Int c = n < 1 ? Int(1) : Int(n);
  c += 1;
  if (policy != PrimePolicy::any && c <= 2) c = 3;
  if (c > 2 && c % 2 == 0) c += 1;
  while (!is_probable_prime(c)) c += (c == 2 ? 1 : 2);
  return policy == PrimePolicy::odd_negated ? Int(-c) : c;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

struct FactorBudget {
  std::uint64_t trial_division_limit = 1'000'000;
  std::uint64_t rho_iteration_limit = 4'000'000;
  std::chrono::milliseconds wall_clock_limit{30'000};
  /// Pollard rho is not attempted on composites wider than this.
  std::size_t rho_max_bits = 256;
  /// Pieces wider than this are not tested for primality.
  std::size_t primality_max_bits = std::size_t{1} << 22;

  void validate() const {
    if (trial_division_limit == 0 || rho_iteration_limit == 0 || wall_clock_limit.count() <= 0 ||
        rho_max_bits == 0 || primality_max_bits == 0)
      throw domain_error("FactorBudget: all limits must be positive");
  }

  /// Defaults overridden by NCONJ_TRIAL_LIMIT, NCONJ_RHO_ITERATIONS, NCONJ_FACTOR_MS.
  static FactorBudget from_env() {
    FactorBudget b;
    auto read = [](const char* name) -> std::optional<std::uint64_t> {
      const char* v = std::getenv(name);
      if (v == nullptr || *v == '\0') return std::nullopt;
      char* end = nullptr;
      auto x = std::strtoull(v, &end, 10);
      if (end == nullptr || *end != '\0') throw domain_error(std::string("bad value for ") + name);
      return x;
    };
    if (auto v = read("NCONJ_TRIAL_LIMIT")) b.trial_division_limit = *v;
    if (auto v = read("NCONJ_RHO_ITERATIONS")) b.rho_iteration_limit = *v;
    if (auto v = read("NCONJ_FACTOR_MS")) b.wall_clock_limit = std::chrono::milliseconds(*v);
    b.validate();
    return b;
  }

  /// Cheap budget for structural divisors of huge tuples: small trial division, no deep rho.
  static FactorBudget structural() {
    FactorBudget b;
    b.trial_division_limit = 10'000;
    b.rho_iteration_limit = 20'000;
    b.wall_clock_limit = std::chrono::milliseconds(2'000);
    b.rho_max_bits = 128;
    b.primality_max_bits = 4096;
    return b;
  }
};

enum class CofactorState {
  unit,                 ///< cofactor 1, every known prime proven
  prime,                ///< cofactor is a proven prime
  probable_prime,       ///< complete, but some prime only passed the probabilistic test
  composite_unfactored, ///< cofactor is a known composite that was not split
  unknown               ///< budget ran out before the cofactor was classified
};

inline const char* to_string(CofactorState s) {
  switch (s) {
  case CofactorState::unit: return "unit";
  case CofactorState::prime: return "prime";
  case CofactorState::probable_prime: return "probable-prime";
  case CofactorState::composite_unfactored: return "composite-unfactored";
  case CofactorState::unknown: return "unknown";
  }
  return "?";
}

/// |value| = cofactor * prod p^e over known_factors. The cofactor is kept as a
/// list of perfect-power-reduced pieces (root, exponent) so radical bounds can
/// count each root once.
struct FactoredInteger {
  Int value;
  int sign = 1;
  std::map<Int, unsigned long> known_factors;
  Int cofactor = 1;
  CofactorState cofactor_state = CofactorState::unit;
  std::vector<std::pair<Int, unsigned long>> unfactored;

  bool complete() const {
    return cofactor_state == CofactorState::unit || cofactor_state == CofactorState::prime ||
           cofactor_state == CofactorState::probable_prime;
  }

  /// All primes of a complete factorization, including a prime cofactor.
  std::map<Int, unsigned long> prime_factors() const {
    auto out = known_factors;
    if ((cofactor_state == CofactorState::prime || cofactor_state == CofactorState::probable_prime) &&
        cofactor > 1)
      out[cofactor] += 1;
    return out;
  }
};

namespace detail {

using Clock = std::chrono::steady_clock;

struct TrialChunk {
  std::size_t begin, end; // indices into base_primes()
  Int product;
};

// Products of consecutive base primes, used to trial-divide very wide numbers
// with a handful of gcds instead of one pass per prime.
inline const std::vector<TrialChunk>& trial_chunks() {
  static const std::vector<TrialChunk> chunks = [] {
    std::vector<TrialChunk> out;
    const auto& primes = base_primes();
    constexpr std::size_t kChunk = 2048;
    for (std::size_t b = 0; b < primes.size(); b += kChunk) {
      std::size_t e = std::min(primes.size(), b + kChunk);
      Int prod = 1;
      for (std::size_t i = b; i < e; ++i) prod *= primes[i];
      out.push_back({b, e, prod});
    }
    return out;
  }();
  return chunks;
}

inline void strip_prime(Int& m, std::uint32_t p, std::map<Int, unsigned long>& into) {
  unsigned long k = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++k;
  }
  if (k > 0) into[Int(p)] += k;
}

// Returns true when the remainder is proven prime or 1 by the p^2 > m rule.
inline bool trial_divide(Int& m, std::uint64_t limit, std::map<Int, unsigned long>& into) {
  constexpr std::size_t kWideBits = 4096;
  if (bit_length(m) <= kWideBits || limit > kSieveLimit) {
    // 1: remainder settled by p^2 > m, -1: past the limit, 0: keep going.
    auto step = [&](std::uint32_t p) {
      if (p > limit) return -1;
      if (mpz_cmp_ui(m.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) return 1;
      strip_prime(m, p, into);
      return 0;
    };
    const auto& small = small_primes();
    for (std::uint32_t p : small)
      if (int r = step(p)) return r > 0 || m == 1;
    if (limit > kSmallSieveLimit) {
      std::vector<std::uint32_t> wide;
      if (limit > kSieveLimit) wide = primes_up_to(limit);
      const auto& rest = limit > kSieveLimit ? wide : base_primes();
      for (std::size_t i = small.size(); i < rest.size(); ++i)
        if (int r = step(rest[i])) return r > 0 || m == 1;
    }
    return m == 1;
  }
  const auto& primes = base_primes();
  for (const auto& chunk : trial_chunks()) {
    if (primes[chunk.begin] > limit) break;
    if (primes[chunk.end - 1] > limit) {
      for (std::size_t i = chunk.begin; i < chunk.end && primes[i] <= limit; ++i)
        strip_prime(m, primes[i], into);
      break;
    }
    Int g = gcd(m % chunk.product, chunk.product);
    if (g == 1) continue;
    for (std::size_t i = chunk.begin; i < chunk.end; ++i)
      if (mpz_divisible_ui_p(g.get_mpz_t(), primes[i])) strip_prime(m, primes[i], into);
  }
  return m == 1;
}

// If m = r^k with k >= 2 maximal, returns (r, k).
inline std::optional<std::pair<Int, unsigned long>> perfect_power(const Int& m) {
  if (m < 4 || !mpz_perfect_power_p(m.get_mpz_t())) return std::nullopt;
  Int root = m;
  unsigned long total = 1;
  bool reduced = true;
  while (reduced) {
    reduced = false;
    std::size_t bits = bit_length(root);
    for (unsigned long k = 2; k <= bits; ++k) {
      bool k_prime = true;
      for (unsigned long d = 2; d * d <= k; ++d)
        if (k % d == 0) { k_prime = false; break; }
      if (!k_prime) continue;
      Int r;
      if (mpz_root(r.get_mpz_t(), root.get_mpz_t(), k) != 0) {
        root = r;
        total *= k;
        reduced = true;
        break;
      }
    }
  }
  if (total == 1) return std::nullopt;
  return std::make_pair(root, total);
}

// Pollard rho with Brent's cycle finding. Returns a nontrivial factor or nothing.
inline std::optional<Int> pollard_brent(const Int& n, std::uint64_t& iterations_left,
                                        Clock::time_point deadline) {
  if (n % 2 == 0) return Int(2);
  constexpr std::uint64_t kBatch = 128;
  for (unsigned long c = 1; c < 64 && iterations_left > 0; ++c) {
    Int y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    auto step = [&](Int& v) {
      v = v * v + c;
      v %= n;
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          q *= (x > y ? Int(x - y) : Int(y - x));
          q %= n;
        }
        g = gcd(q, n);
        k += lim;
        iterations_left = iterations_left > lim ? iterations_left - lim : 0;
        if (iterations_left == 0 || Clock::now() > deadline) return std::nullopt;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        g = gcd(x > ys ? Int(x - ys) : Int(ys - x), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

} // namespace detail

/// Factors n as far as the budget allows. Running out of budget is not an
/// error; it shows up in cofactor_state.
inline FactoredInteger factorize(const Int& n, const FactorBudget& budget = {}) {
  if (n == 0) throw domain_error("factorize: n must be nonzero");
  budget.validate();
  const auto deadline = detail::Clock::now() + budget.wall_clock_limit;

  FactoredInteger f;
  f.value = n;
  f.sign = n < 0 ? -1 : 1;
  Int m = abs(n);

  if (detail::trial_divide(m, budget.trial_division_limit, f.known_factors)) {
    if (m == 1) {
      f.cofactor_state = CofactorState::unit;
    } else {
      f.cofactor = m;
      f.cofactor_state = CofactorState::prime;
    }
    return f;
  }
  // Primality of pieces wider than primality_max_bits is left undetermined.
  auto testable = [&](const Int& c) { return bit_length(c) <= budget.primality_max_bits; };
  bool undetermined = false;
  if (testable(m) && is_probable_prime(m)) {
    f.cofactor = m;
    f.cofactor_state = primality_is_proven(m) ? CofactorState::prime : CofactorState::probable_prime;
    return f;
  }

  struct Piece {
    Int value;
    unsigned long multiplicity;
    bool known_composite;
  };
  bool probabilistic = false;
  bool timed_out = false;
  std::uint64_t rho_left = budget.rho_iteration_limit;
  std::vector<Piece> stack{{m, 1, testable(m)}};
  std::vector<Piece> left;
  while (!stack.empty()) {
    Piece piece = std::move(stack.back());
    stack.pop_back();
    const Int& c = piece.value;
    const unsigned long k = piece.multiplicity;
    if (c == 1) continue;
    if (detail::Clock::now() > deadline) {
      timed_out = true;
      left.push_back(std::move(piece));
      continue;
    }
    if (!piece.known_composite) {
      if (!testable(c)) {
        undetermined = true;
      } else if (is_probable_prime(c)) {
        if (!primality_is_proven(c)) probabilistic = true;
        f.known_factors[c] += k;
        continue;
      } else {
        piece.known_composite = true;
      }
    }
    if (auto pp = detail::perfect_power(c)) {
      stack.push_back({pp->first, k * pp->second, false});
      continue;
    }
    std::optional<Int> d;
    if (bit_length(c) <= budget.rho_max_bits) d = detail::pollard_brent(c, rho_left, deadline);
    if (!d) {
      left.push_back(std::move(piece));
      continue;
    }
    Int other = c / *d;
    stack.push_back({*d, k, false});
    stack.push_back({std::move(other), k, false});
  }

  // Unsplit pieces may still contain primes that were found elsewhere.
  for (auto& piece : left) {
    for (auto& [p, e] : f.known_factors) {
      while (divides(p, piece.value)) {
        piece.value /= p;
        e += piece.multiplicity;
        piece.known_composite = false;
      }
    }
  }
  std::map<Int, unsigned long> merged;
  for (auto& piece : left) {
    if (piece.value == 1) continue;
    if (!timed_out && !piece.known_composite && testable(piece.value) && is_probable_prime(piece.value)) {
      f.known_factors[piece.value] += piece.multiplicity;
      continue;
    }
    merged[piece.value] += piece.multiplicity;
  }
  f.unfactored.assign(merged.begin(), merged.end());
  f.cofactor = 1;
  for (const auto& [c, k] : f.unfactored) f.cofactor *= pow(c, k);

  if (f.unfactored.empty())
    f.cofactor_state = probabilistic ? CofactorState::probable_prime : CofactorState::unit;
  else
    f.cofactor_state = timed_out || undetermined ? CofactorState::unknown : CofactorState::composite_unfactored;
  return f;
}

/// Product of the distinct primes of |value|; radical(+-1) = 1.
inline Int radical(const FactoredInteger& f) {
  if (!f.complete())
    throw inexact_error("radical: factorization of " + to_decimal(f.value) +
                        " is incomplete; use radical_upper_bound");
  Int r = 1;
  for (const auto& [p, e] : f.prime_factors()) r *= p;
  return r;
}

/// An integer U with rad(prod parts) <= U: distinct known primes times distinct
/// unfactored perfect-power roots. Exact when every part is fully factored.
inline Int radical_upper_bound(const std::vector<FactoredInteger>& parts) {
  if (parts.empty()) throw domain_error("radical_upper_bound: parts must be nonempty");
  std::set<Int> primes;
  std::set<Int> roots;
  for (const auto& f : parts) {
    for (const auto& [p, e] : f.known_factors) primes.insert(p);
    if (f.cofactor_state == CofactorState::prime || f.cofactor_state == CofactorState::probable_prime) {
      if (f.cofactor > 1) primes.insert(f.cofactor);
    } else {
      for (const auto& [root, e] : f.unfactored) roots.insert(root);
    }
  }
  // A root divisible by a known prime still only needs its other primes counted,
  // but keeping it whole stays an upper bound.
  Int u = 1;
  for (const auto& p : primes) u *= p;
  for (const auto& r : roots) u *= r;
  return u;
}

/// Carmichael function lambda(m) from a complete factorization of m.
inline Int carmichael(const FactoredInteger& m) {
  if (!m.complete()) throw budget_error("carmichael: factorization of modulus incomplete");
  Int l = 1;
  for (const auto& [p, e] : m.prime_factors()) {
    Int term;
    if (p == 2)
      term = e == 1 ? Int(1) : e == 2 ? Int(2) : pow(Int(2), e - 2);
    else
      term = pow(p, e - 1) * (p - 1);
    l = lcm(l, term);
  }
  return l;
}

/// Least e >= 1 with a^e = 1 mod m, found by descending from lambda(m).
inline Int multiplicative_order(const Int& a, const Int& m, const FactorBudget& budget = {}) {
  if (m < 2) throw domain_error("multiplicative_order: modulus must be >= 2");
  if (gcd(a, m) != 1) throw domain_error("multiplicative_order: gcd(a, m) != 1");
  FactoredInteger fm = factorize(m, budget);
  if (!fm.complete()) throw budget_error("multiplicative_order: cannot factor modulus " + to_decimal(m));
  Int lambda = carmichael(fm);
  FactoredInteger fl = factorize(lambda, budget);
  if (!fl.complete())
    throw budget_error("multiplicative_order: cannot factor group exponent " + to_decimal(lambda));
  Int e = lambda;
  for (const auto& [p, k] : fl.prime_factors()) {
    for (unsigned long i = 0; i < k; ++i) {
      Int candidate = e / p;
      if (mod_pow(a, candidate, m) != 1) break;
      e = candidate;
    }
  }
  return e;
}

/// Product of all primes <= m.
inline Int primorial(std::uint64_t m) {
  if (m < 2) throw domain_error("primorial: m must be >= 2");
  Int q = 1;
  for (std::uint32_t p : detail::primes_below_or_equal(m)) q *= p;
  return q;
}

// ---------------------------------------------------------------------------
// Logarithms
// ---------------------------------------------------------------------------

struct BigLog {
  double value = 0.0;
  double relative_error_bound = 0.0;
};

/// ln|n| from the top 53 bits and the binary exponent; no full conversion.
inline BigLog big_ln(const Int& n) {
  if (n == 0) throw domain_error("big_ln: n must be nonzero");
  Int a = abs(n);
  if (a == 1) return {0.0, 0.0};
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t()); // a = mant * 2^exp2, mant in [0.5, 1)
  static const double ln2 = std::log(2.0);
  double v = std::log(mant) + static_cast<double>(exp2) * ln2;
  return {v, 1e-13};
}

// ---------------------------------------------------------------------------
// Residue cycles under repeated squaring
// ---------------------------------------------------------------------------

struct ResidueCycle {
  Int base;
  Int modulus;
  /// residues of base^(2^k) for k = 0, 1, ..., up to the first repeat
  std::vector<Int> sequence;
  /// index in sequence where the cycle starts
  std::size_t cycle_start = 0;
  /// distinct residues attained for k >= 1
  std::set<Int> attained;

  std::size_t cycle_length() const { return sequence.size() - cycle_start; }

  /// True when no residue for k >= 1 is congruent to any of the given values.
  bool avoids(const std::vector<Int>& values) const {
    for (Int v : values) {
      v %= modulus;
      if (v < 0) v += modulus;
      if (attained.count(v)) return false;
    }
    return true;
  }
};

inline ResidueCycle residue_cycle(const Int& base, const Int& modulus) {
  if (modulus < 2) throw domain_error("residue_cycle: modulus must be >= 2");
  ResidueCycle rc;
  rc.base = base;
  rc.modulus = modulus;
  std::map<Int, std::size_t> seen;
  Int r = base % modulus;
  if (r < 0) r += modulus;
  while (true) {
    auto it = seen.find(r);
    if (it != seen.end()) {
      rc.cycle_start = it->second;
      break;
    }
    seen.emplace(r, rc.sequence.size());
    rc.sequence.push_back(r);
    r = r * r % modulus;
  }
  for (std::size_t k = 1; k < rc.sequence.size(); ++k) rc.attained.insert(rc.sequence[k]);
  // k >= 1 also covers the cycle re-entry when the cycle starts at k = 0.
  if (rc.cycle_start == 0) rc.attained.insert(rc.sequence[0]);
  return rc;
}

} // namespace nconj
