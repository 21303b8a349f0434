#pragma once

// Command-line front end. run_cli is the whole program; tools/nconj.cpp only
// forwards argv and the standard streams.
//
// Exit codes: 0 ok, 1 verification failure, 2 input or usage error,
// 3 capacity or budget exhausted.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nconj/constructions.hpp"
#include "nconj/polyident.hpp"
#include "nconj/quality.hpp"
#include "nconj/records.hpp"
#include "nconj/search.hpp"

namespace nconj {

enum ExitCode : int { kExitOk = 0, kExitVerification = 1, kExitInput = 2, kExitCapacity = 3 };

/// Inclusive integer range "a..b", or a single value "a".
struct IntRange {
  long lo = 0, hi = 0;

  std::vector<long> values() const {
    std::vector<long> v;
    for (long i = lo; i <= hi; ++i) v.push_back(i);
    return v;
  }
};

inline IntRange parse_range(const std::string& text) {
  auto to_long = [&](const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw domain_error("bad range '" + text + "'");
    return v;
  };
  IntRange r;
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = to_long(text);
  } else {
    r.lo = to_long(text.substr(0, dots));
    r.hi = to_long(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw domain_error("empty range '" + text + "'");
  return r;
}

namespace detail {

struct CliStreams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

/// Output target: the given stream, or a file when a path is set.
class Sink {
public:
  Sink(std::ostream& fallback, const std::string& path) {
    if (path.empty() || path == "-") {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw domain_error("cannot open output file '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

/// Input source: the given stream for "-" or empty, otherwise a file.
class Source {
public:
  Source(std::istream& fallback, const std::string& path) {
    if (path.empty() || path == "-") {
      is_ = &fallback;
    } else {
      file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
      if (!*file_) throw domain_error("cannot open input file '" + path + "'");
      is_ = file_.get();
    }
  }
  std::istream& operator*() { return *is_; }

private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* is_ = nullptr;
};

inline ForbiddenSet forbidden_from(const std::vector<std::string>& items) {
  std::vector<Int> v;
  for (const auto& s : items) v.push_back(parse_decimal(s));
  return ForbiddenSet(std::move(v));
}

struct BudgetFlags {
  std::uint64_t trial = 0, rho = 0, ms = 0;

  void add(CLI::App* app) {
    app->add_option("--trial-limit", trial, "Trial division bound (overrides NCONJ_TRIAL_LIMIT)");
    app->add_option("--rho-iterations", rho, "Pollard rho iteration budget (overrides NCONJ_RHO_ITERATIONS)");
    app->add_option("--factor-ms", ms, "Factoring wall-clock budget in ms (overrides NCONJ_FACTOR_MS)");
  }

  FactorBudget resolve() const {
    FactorBudget b = FactorBudget::from_env();
    if (trial) b.trial_division_limit = trial;
    if (rho) b.rho_iteration_limit = rho;
    if (ms) b.wall_clock_limit = std::chrono::milliseconds(ms);
    b.validate();
    return b;
  }
};

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
  std::string family;
  std::string k = "1", n, pell_index = "1", h = "1", y, exponent_multiple = "64";
  std::string ell = "3";
  std::vector<std::string> forbid;
  std::string y_policy = "minimal";
  std::string exponent_policy = "magnitude";
  std::string s_policy = "minimal";
  unsigned long s_ell = 11;
  bool dry_run = false;
  std::string output;
};

inline json dry_run_json(const GeneralDryRun& d) {
  json j = json::object();
  j["family"] = "general";
  j["mode"] = "faithful";
  j["n"] = d.n;
  j["s_digits"] = to_decimal(d.s).size();
  j["t"] = to_decimal(d.t);
  j["y_digits"] = to_decimal(d.y).size();
  j["order_mod_10y_minus_1"] = to_decimal(d.order_minus);
  j["order_mod_10y_plus_1"] = to_decimal(d.order_plus);
  j["split_m_digits"] = to_decimal(d.split_m).size();
  j["log10_primorial_m"] = d.log10_primorial_m;
  j["log10_x"] = d.log10_x;
  j["materializable"] = false;
  return j;
}

inline int cmd_gen(const GenOptions& o, CliStreams io) {
  Sink sink(io.out, o.output);
  std::ostream& os = *sink;
  const ForbiddenSet forbidden = forbidden_from(o.forbid);
  auto emit = [&](const FamilyInstance& fi) { os << record_to_line(record_from_instance(fi)) << '\n'; };

  if (o.family == "konyagin") {
    for (long k : parse_range(o.k).values()) {
      if (k < 1) throw domain_error("k must be >= 1");
      emit(konyagin_quintuple(static_cast<unsigned>(k)));
    }
  } else if (o.family == "odd") {
    YPolicy yp;
    if (o.y_policy == "minimal") yp = YPolicy::minimal_multiple;
    else if (o.y_policy == "factorial") yp = YPolicy::factorial_faithful;
    else throw domain_error("unknown y policy '" + o.y_policy + "'");
    for (long n : parse_range(o.n.empty() ? "5" : o.n).values())
      for (long idx : parse_range(o.pell_index).values()) {
        if (n < 5 || idx < 1) throw domain_error("odd family needs n >= 5 and pell index >= 1");
        emit(odd_family(static_cast<unsigned>(n), forbidden, static_cast<unsigned long>(idx), yp));
      }
  } else if (o.family == "general") {
    GeneralScale scale;
    if (o.exponent_policy == "magnitude") scale.exponent_policy = ExponentPolicy::magnitude;
    else if (o.exponent_policy == "orders") scale.exponent_policy = ExponentPolicy::orders;
    else throw domain_error("unknown exponent policy '" + o.exponent_policy + "'");
    if (o.s_policy == "minimal") scale.s_policy = SPolicy::minimal;
    else if (o.s_policy == "factorial") scale.s_policy = SPolicy::factorial;
    else throw domain_error("unknown s policy '" + o.s_policy + "'");
    scale.ell = o.s_ell;
    for (long n : parse_range(o.n.empty() ? "6" : o.n).values()) {
      if (n < 6) throw domain_error("general family needs n >= 6");
      if (o.dry_run) {
        os << dry_run_json(general_family_dry_run(static_cast<unsigned>(n), forbidden, o.s_ell)).dump() << '\n';
        continue;
      }
      for (long j : parse_range(o.exponent_multiple).values()) {
        if (j < 1) throw domain_error("exponent multiple must be >= 1");
        scale.exponent_multiple = static_cast<unsigned long>(j);
        emit(general_family(static_cast<unsigned>(n), forbidden, scale));
      }
    }
  } else if (o.family == "nine-fifths") {
    const Int ell = parse_decimal(o.ell);
    for (long h : parse_range(o.h).values()) {
      if (h < 1) throw domain_error("h must be >= 1");
      emit(nine_fifths_family(ell, static_cast<unsigned long>(h)).first);
    }
  } else if (o.family == "an-quadruple") {
    for (long h : parse_range(o.h).values()) {
      if (h < 1) throw domain_error("h must be >= 1");
      emit(an_quadruple(static_cast<unsigned long>(h)));
    }
  } else if (o.family == "geometric") {
    for (long n : parse_range(o.n.empty() ? "3" : o.n).values())
      for (long y : parse_range(o.y.empty() ? "2" : o.y).values()) {
        if (n < 3 || y < 2) throw domain_error("geometric family needs n >= 3 and y >= 2");
        emit(geometric_family(static_cast<unsigned>(n), Int(y)));
      }
  } else {
    throw domain_error("unknown family '" + o.family + "'");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::string input;
  std::string universe;
  std::vector<std::string> forbid;
  std::string output;
};

inline json witness_json(const SubsumCheck& c) {
  json w = json::array();
  if (c.witness)
    for (int x : c.witness->coefficients) w.push_back(x);
  return w;
}

inline json report_json(const MembershipReport& r, std::size_t line) {
  json j = json::object();
  j["line"] = line;
  j["universe"] = to_string(r.universe.tag);
  j["verdict"] = r.verdict ? "pass" : "fail";
  json failures = json::array();
  if (!r.sum.ok) {
    failures.push_back("sum");
    j["sum"] = to_decimal(r.sum.residual);
  }
  auto coprime = [&](const std::optional<CoprimeCheck>& c, const char* name) {
    if (!c || c->ok) return;
    failures.push_back(name);
    json g = json::object();
    if (c->pair) g["pair"] = {c->pair->first, c->pair->second};
    g["gcd"] = to_decimal(c->common);
    j[name] = g;
  };
  coprime(r.pairwise, "pairwise_gcd");
  coprime(r.setwise, "setwise_gcd");
  if (r.subsum_01 && !r.subsum_01->ok) {
    failures.push_back("subsum_01");
    j["witness"] = witness_json(*r.subsum_01);
  }
  if (r.subsum_pm1 && !r.subsum_pm1->ok) {
    failures.push_back("subsum_pm1");
    j["witness"] = witness_json(*r.subsum_pm1);
  }
  if (r.forbidden && !r.forbidden->ok) {
    failures.push_back("forbidden");
    json f = json::object();
    if (r.forbidden->index) f["index"] = *r.forbidden->index;
    f["divisor"] = to_decimal(r.forbidden->divisor);
    j["forbidden"] = f;
  }
  j["failures"] = failures;
  return j;
}

inline int cmd_verify(const VerifyOptions& o, CliStreams io) {
  Source src(io.in, o.input);
  std::vector<TupleRecord> records = read_records(*src);
  Sink sink(io.out, o.output);
  std::ostream& os = *sink;

  std::optional<Universe> override_u;
  if (!o.universe.empty()) {
    Universe u;
    u.tag = parse_universe_tag(o.universe);
    u.forbidden = forbidden_from(o.forbid);
    override_u = u;
  }

  bool any_fail = false, any_capacity = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    Universe u = override_u ? *override_u : rec.universe ? *rec.universe : Universe::U(forbidden_from(o.forbid));
    try {
      MembershipReport r = membership(rec.tuple, u);
      json j = report_json(r, i + 1);
      os << j.dump() << '\n';
      any_fail = any_fail || !r.verdict;
    } catch (const capacity_error& e) {
      json j = {{"line", i + 1}, {"universe", to_string(u.tag)}, {"verdict", "capacity"}, {"error", e.what()}};
      os << j.dump() << '\n';
      any_capacity = true;
    }
  }
  if (any_fail) return kExitVerification;
  if (any_capacity) return kExitCapacity;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// quality
// ---------------------------------------------------------------------------

struct QualityOptions {
  std::string input;
  std::string output;
  bool strict = false;
  BudgetFlags budget;
};

inline int cmd_quality(const QualityOptions& o, CliStreams io) {
  Source src(io.in, o.input);
  std::vector<TupleRecord> records = read_records(*src);
  const FactorBudget budget = o.budget.resolve();
  Sink sink(io.out, o.output);
  std::ostream& os = *sink;
  write_csv_row(os, {"family", "params", "ln_max", "ln_rad_or_bound", "quality", "exactness", "running_max"});
  double best = -std::numeric_limits<double>::infinity();
  bool unavailable = false;
  for (const auto& rec : records) {
    const std::string params = rec.params.dump();
    std::optional<QualityEstimate> q;
    FactorBudget exact_budget = budget;
    if (!rec.structural_parts.empty())
      exact_budget.primality_max_bits =
          std::min(exact_budget.primality_max_bits, FactorBudget::structural().primality_max_bits);
    try {
      q = quality_exact(rec.tuple, exact_budget);
    } catch (const inexact_error&) {
    }
    if (!q && !rec.structural_parts.empty()) {
      std::vector<FactoredInteger> parts;
      const auto sb = FactorBudget::structural();
      for (const auto& p : rec.structural_parts) parts.push_back(factorize(p, sb));
      q = quality_lower_bound(rec.tuple, parts);
    }
    if (!q) {
      unavailable = true;
      write_csv_row(os, {rec.family, params, format_real(big_ln(rec.tuple.max_abs()).value), "", "",
                         "bounded-unavailable", std::isfinite(best) ? format_real(best) : ""});
      continue;
    }
    best = std::max(best, q->value());
    write_csv_row(os, {rec.family, params, format_real(q->ln_max.value), format_real(q->ln_rad_or_bound.value),
                       format_real(q->value()), to_string(q->exactness), format_real(best)});
  }
  return unavailable && o.strict ? kExitCapacity : kExitOk;
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

struct IdentityOptions {
  long s = 0; ///< 0: full default run
};

inline int cmd_identities(const IdentityOptions& o, CliStreams io) {
  std::ostream& os = io.out;
  if (o.s != 0) {
    if (!admissible_s(o.s))
      throw domain_error("s = " + std::to_string(o.s) + " is inadmissible (need s >= 5 odd with s = 2 mod 3)");
    const Poly p = a123_poly(o.s);
    os << "s=" << o.s << " degree=" << p.degree() << " expected=" << (o.s - 5)
       << " parity=" << (p.is_even() ? "even" : "not-even") << '\n';
    const ZConstants z = z_constants(o.s);
    os << "z0=" << to_decimal(z.z0) << " z1=" << to_decimal(z.z1) << " z2=" << to_decimal(z.z2) << '\n';
    return p.degree() == o.s - 5 && p.is_even() ? kExitOk : kExitVerification;
  }

  bool all = true;
  auto line = [&](bool ok, const std::string& what) {
    os << (ok ? "PASS " : "FAIL ") << what << '\n';
    all = all && ok;
  };
  line(verify_deg5_identity(), "(x-1)^5 + 10(x^2+1)^2 - (x+1)^5 = 8");
  line(verify_cubic_identity(), "(s+1)^3 - (s-1)^3 - 6s^2 = 2");
  bool c54 = true, c54_alt = true;
  for (long y = 1; y <= 50; ++y) {
    c54 = c54 && verify_54_constant(Int(y)).holds;
    c54_alt = c54_alt && !verify_54_constant(Int(y), FourthEntryReading::ten_y_all_cubed).residual.is_constant();
  }
  line(c54, "a1+a2+a3+a4 = 2y^5 - 100y^6 with a4 = -(x^2+10y^3)^2, y in [1,50]");
  line(c54_alt, "a4 = -(x^2+(10y)^3)^2 gives a non-constant sum, y in [1,50]");
  for (long s = 5; s <= 35; ++s) {
    if (!admissible_s(s)) continue;
    const Poly p = a123_poly(s);
    line(p.degree() == s - 5 && p.is_even(),
         "s=" + std::to_string(s) + ": degree " + std::to_string(p.degree()) + " = s-5, even");
  }
  const ZConstants z = z_constants(35);
  line(divides(Int(6), z.z0), "s=35: 6 | z0 = " + to_decimal(z.z0));
  return all ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

struct SearchOptions {
  unsigned n = 3;
  std::uint64_t bound = 10;
  std::string universe = "R";
  std::vector<std::string> forbid;
  std::size_t top = 10;
  std::uint64_t node_budget = 50'000'000;
  unsigned threads = 0;
  std::string format = "csv";
  std::string output;
};

inline int cmd_search(const SearchOptions& o, CliStreams io) {
  if (o.format != "csv" && o.format != "jsonl") throw domain_error("unknown format '" + o.format + "'");
  SearchSpec spec;
  spec.n = o.n;
  spec.entry_bound = o.bound;
  spec.universe.tag = parse_universe_tag(o.universe);
  spec.universe.forbidden = forbidden_from(o.forbid);
  spec.top_k = o.top;
  spec.node_budget = o.node_budget;
  spec.threads = o.threads;
  SearchResult res = best_quality(spec);
  Sink sink(io.out, o.output);
  std::ostream& os = *sink;
  if (o.format == "csv") write_csv_row(os, {"rank", "entries", "quality"});
  for (std::size_t i = 0; i < res.top.size(); ++i) {
    const auto& h = res.top[i];
    if (o.format == "csv") {
      std::string entries;
      for (const auto& e : h.tuple.entries()) entries += (entries.empty() ? "" : " ") + to_decimal(e);
      write_csv_row(os, {std::to_string(i + 1), entries, format_real(h.quality)});
    } else {
      TupleRecord r;
      r.tuple = h.tuple;
      r.family = "search";
      r.params = {{"n", o.n}, {"bound", o.bound}, {"rank", i + 1}, {"quality", format_real(h.quality)}};
      r.universe = spec.universe;
      os << record_to_line(r) << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

inline int cmd_selftest(CliStreams io) {
  std::ostream& os = io.out;
  bool all = true;
  auto line = [&](bool ok, const std::string& what) {
    os << (ok ? "PASS " : "FAIL ") << what << '\n';
    all = all && ok;
  };
  const double q = quality_exact(Tuple{8192, -8181, -11}).value();
  line(std::fabs(q - 1.0234) < 5e-4, "quality(8192, -8181, -11) = " + format_real(q));
  line(konyagin_quintuple(1).report.verdict, "konyagin k=1 in U(empty,5)");
  const PellSolution p2 = pell_solution(Int(1), 2);
  line(p2.s == 7 && p2.t == 5 && p2.satisfies(), "pell y=1 second solution (7, 5)");
  line(verify_deg5_identity() && verify_cubic_identity(), "quintic and cubic identities");
  const SplitResult sp = split_avoiding_factors(Int(-5), 7);
  line(sp.violations().empty(), "split u=-5 m=7");
  SearchSpec spec;
  spec.n = 3;
  spec.entry_bound = 9;
  spec.top_k = 1;
  spec.threads = 1;
  const SearchResult sr = best_quality(spec);
  line(!sr.top.empty() && sr.top[0].tuple == Tuple{9, -8, -1}, "search n=3 bound=9 finds (9, -8, -1)");
  return all ? kExitOk : kExitVerification;
}

} // namespace detail

/// Full command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CliStreams io{in, out, err};
  CLI::App app{"Tuple families, universe membership and quality experiments"};
  app.require_subcommand(1);
  // -h stays free for the exponent option of gen.
  app.set_help_flag("--help", "Print this help message and exit");

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate family instances as JSON lines");
  g->add_option("--family", gen.family, "konyagin | odd | general | nine-fifths | an-quadruple | geometric")
      ->required();
  g->add_option("--k", gen.k, "Konyagin index range, e.g. 1..8");
  g->add_option("--n", gen.n, "Tuple length range");
  g->add_option("--pell-index", gen.pell_index, "Pell solution index range (odd family)");
  g->add_option("--h", gen.h, "Exponent range (nine-fifths, an-quadruple)");
  g->add_option("--ell", gen.ell, "Odd prime base (nine-fifths)");
  g->add_option("--y", gen.y, "Base range (geometric)");
  g->add_option("--forbid", gen.forbid, "Forbidden divisors")->delimiter(',');
  g->add_option("--y-policy", gen.y_policy, "minimal | factorial (odd family)");
  g->add_option("--exponent-policy", gen.exponent_policy, "magnitude | orders (general family)");
  g->add_option("--exponent-multiple", gen.exponent_multiple, "Exponent multiple range (general family)");
  g->add_option("--s-policy", gen.s_policy, "minimal | factorial (general family)");
  g->add_option("--s-ell", gen.s_ell, "ell for s = ell! (general family, factorial policy)");
  g->add_flag("--dry-run", gen.dry_run, "Report full-scale parameters without materializing (general family)");
  g->add_option("-o,--output", gen.output, "Output path (default stdout)");

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "Check records for universe membership");
  v->add_option("input", ver.input, "JSON-lines input (default stdin)");
  v->add_option("--universe", ver.universe, "A | B | R | U (default: the record's universe, else U)");
  v->add_option("--forbid", ver.forbid, "Forbidden divisors for U")->delimiter(',');
  v->add_option("-o,--output", ver.output, "Output path (default stdout)");

  QualityOptions qual;
  auto* q = app.add_subcommand("quality", "Quality table (CSV) with running maximum");
  q->add_option("input", qual.input, "JSON-lines input (default stdin)");
  q->add_flag("--strict", qual.strict, "Exit 3 when a row has no exact value and no structural parts");
  q->add_option("-o,--output", qual.output, "Output path (default stdout)");
  qual.budget.add(q);

  IdentityOptions ids;
  auto* id = app.add_subcommand("identities", "Check the polynomial identities");
  id->add_option("--s", ids.s, "Report the degree drop for one s");

  SearchOptions sea;
  auto* s = app.add_subcommand("search", "Exhaustive small-height search ranked by quality");
  s->add_option("--n", sea.n, "Tuple length")->required();
  s->add_option("--bound", sea.bound, "Entry bound")->required();
  s->add_option("--universe", sea.universe, "A | B | R | U");
  s->add_option("--forbid", sea.forbid, "Forbidden divisors for U")->delimiter(',');
  s->add_option("--top", sea.top, "How many tuples to keep");
  s->add_option("--node-budget", sea.node_budget, "Refuse searches with more prefixes than this");
  s->add_option("--threads", sea.threads, "Worker threads (0: all cores)");
  s->add_option("--format", sea.format, "csv | jsonl");
  s->add_option("-o,--output", sea.output, "Output path (default stdout)");

  auto* st = app.add_subcommand("selftest", "Quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, io);
    if (v->parsed()) return cmd_verify(ver, io);
    if (q->parsed()) return cmd_quality(qual, io);
    if (id->parsed()) return cmd_identities(ids, io);
    if (s->parsed()) return cmd_search(sea, io);
    if (st->parsed()) return cmd_selftest(io);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const capacity_error& e) {
    err << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const budget_error& e) {
    err << "budget: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const inexact_error& e) {
    err << "budget: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const verification_error& e) {
    err << "verification: " << e.what() << '\n';
    return kExitVerification;
  }
  return kExitInput;
}

} // namespace nconj
