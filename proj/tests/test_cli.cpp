#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "nconj/cli.hpp"

using namespace nconj;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "nconj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

// Last field of the last CSV line.
double last_running_max(const std::string& csv) {
  auto ls = lines(csv);
  const auto& l = ls.back();
  return std::stod(l.substr(l.rfind(',') + 1));
}

} // namespace

TEST(CliGen, Konyagin) {
  auto r = run({"gen", "--family", "konyagin", "--k", "1..8"});
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 8u);
  auto rec = parse_record(ls[0], 1);
  EXPECT_EQ(rec.tuple, (Tuple{50653, -42875, -7776, -31, 29}));
  EXPECT_EQ(rec.family, "konyagin");
  EXPECT_EQ(rec.mode, std::optional<std::string>("faithful"));
  EXPECT_EQ(rec.structural_parts.size(), 5u);
}

TEST(CliGen, OddFamilyRoundTrip) {
  auto g = run({"gen", "--family", "odd", "--n", "5", "--pell-index", "1..5"});
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(lines(g.out).size(), 5u);
  auto v = run({"verify"}, g.out);
  EXPECT_EQ(v.code, 0);
  for (const auto& l : lines(v.out)) EXPECT_NE(l.find("\"verdict\":\"pass\""), std::string::npos);
}

TEST(CliGen, EveryFamilyRoundTrips) {
  const std::vector<std::vector<std::string>> cmds{
      {"gen", "--family", "general", "--n", "6", "--exponent-multiple", "1"},
      {"gen", "--family", "nine-fifths", "--ell", "5", "--h", "1..3"},
      {"gen", "--family", "an-quadruple", "--h", "1..6"},
      {"gen", "--family", "geometric", "--n", "3..6", "--y", "2..4"},
      {"gen", "--family", "odd", "--n", "7", "--forbid", "3,7", "--pell-index", "2"}};
  for (const auto& c : cmds) {
    auto g = run(c);
    ASSERT_EQ(g.code, 0) << g.err;
    auto v = run({"verify"}, g.out);
    EXPECT_EQ(v.code, 0) << v.out;
  }
}

TEST(CliGen, UsageErrors) {
  EXPECT_EQ(run({"gen", "--family", "odd", "--n", "5", "--forbid", "5"}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "nope"}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "konyagin", "--k", "5..3"}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "konyagin", "--k", "x"}).code, 2);
  EXPECT_EQ(run({"gen"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "odd", "--y-policy", "factorial"}).code, 3);
}

TEST(CliGen, Deterministic) {
  auto a = run({"gen", "--family", "general", "--n", "7", "--exponent-multiple", "2"});
  auto b = run({"gen", "--family", "general", "--n", "7", "--exponent-multiple", "2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliGen, DryRun) {
  auto r = run({"gen", "--family", "general", "--dry-run"});
  EXPECT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["materializable"], false);
  EXPECT_EQ(j["t"], "103");
}

TEST(CliVerify, PassAndFail) {
  auto k = run({"gen", "--family", "konyagin", "--k", "1"});
  auto v = run({"verify", "--universe", "U"}, k.out);
  EXPECT_EQ(v.code, 0);

  auto f = run({"verify", "--universe", "U"}, R"({"entries": ["1", "2", "-3", "7", "-7"]})");
  EXPECT_EQ(f.code, 1);
  auto j = json::parse(f.out);
  EXPECT_EQ(j["verdict"], "fail");
  ASSERT_TRUE(j.contains("witness"));
  std::vector<int> w = j["witness"].get<std::vector<int>>();
  long s = 1 * w[0] + 2 * w[1] - 3 * w[2] + 7 * w[3] - 7 * w[4];
  EXPECT_EQ(s, 0);
}

TEST(CliVerify, MalformedLine) {
  std::string in = R"({"entries": ["1", "2", "-3"]})"
                   "\n"
                   R"({"entries": [1, 2, -3]})"
                   "\n";
  auto r = run({"verify"}, in);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"verify"}, "not json\n").code, 2);
}

TEST(CliVerify, CapacityPerRecord) {
  std::string entries;
  for (int i = 0; i < 21; ++i) entries += "\"1\",";
  entries += "\"-21\"";
  auto r = run({"verify", "--universe", "U"}, "{\"entries\": [" + entries + "]}\n");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("capacity"), std::string::npos);
}

TEST(CliQuality, AbcTriple) {
  auto r = run({"quality"}, R"({"entries": ["8192", "-8181", "-11"], "family": "abc"})");
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "family,params,ln_max,ln_rad_or_bound,quality,exactness,running_max");
  EXPECT_NEAR(last_running_max(r.out), 1.0234, 5e-4);
  EXPECT_NE(ls[1].find(",exact,"), std::string::npos);
}

TEST(CliQuality, EmptyInput) {
  auto r = run({"quality"}, "");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 1u);
}

TEST(CliQuality, KonyaginRunningMax) {
  auto g = run({"gen", "--family", "konyagin", "--k", "1..12"});
  auto q = run({"quality"}, g.out);
  EXPECT_EQ(q.code, 0);
  EXPECT_EQ(lines(q.out).size(), 13u);
  EXPECT_GE(last_running_max(q.out), 1.49);
}

TEST(CliQuality, UnavailableAndBudgets) {
  Int p = next_prime_above(pow(Int(2), 40)), q = next_prime_above(pow(Int(2), 41));
  std::string rec = "{\"entries\": [\"" + to_decimal(p * q) + "\", \"-" + to_decimal(p * q - 1) + "\", \"-1\"]}\n";
  setenv("NCONJ_RHO_ITERATIONS", "1", 1);
  auto a = run({"quality"}, rec);
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("bounded-unavailable"), std::string::npos);
  EXPECT_EQ(run({"quality", "--strict"}, rec).code, 3);
  // The flag wins over the environment.
  auto b = run({"quality", "--rho-iterations", "5000000"}, rec);
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find(",exact,"), std::string::npos);
  setenv("NCONJ_RHO_ITERATIONS", "garbage", 1);
  EXPECT_EQ(run({"quality"}, rec).code, 2);
  unsetenv("NCONJ_RHO_ITERATIONS");
}

TEST(CliIdentities, DefaultAndSingle) {
  auto r = run({"identities"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  auto s = run({"identities", "--s", "11"});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("degree=6"), std::string::npos);
  EXPECT_NE(s.out.find("parity=even"), std::string::npos);
  EXPECT_EQ(run({"identities", "--s", "7"}).code, 2);
}

TEST(CliSearch, Examples) {
  auto a = run({"search", "--n", "3", "--bound", "81", "--universe", "R", "--top", "1"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(lines(a.out).at(1), "1,81 -80 -1,1.292030");
  auto b = run({"search", "--n", "3", "--bound", "2"});
  EXPECT_EQ(lines(b.out).size(), 2u);
  EXPECT_EQ(lines(b.out).at(1), "1,2 -1 -1,1.000000");
  EXPECT_EQ(run({"search", "--n", "6", "--bound", "10000"}).code, 3);
  auto j = run({"search", "--n", "3", "--bound", "9", "--top", "2", "--format", "jsonl"});
  EXPECT_EQ(j.code, 0);
  auto rec = parse_record(lines(j.out).at(0), 1);
  EXPECT_EQ(rec.tuple, (Tuple{9, -8, -1}));
  EXPECT_EQ(run({"search", "--n", "3", "--bound", "9", "--format", "xml"}).code, 2);
}

TEST(CliSelftest, Passes) { EXPECT_EQ(run({"selftest"}).code, 0); }

TEST(Records, RoundTripAndErrors) {
  auto fi = odd_family(5, ForbiddenSet{3}, 2);
  TupleRecord r = record_from_instance(fi);
  TupleRecord back = parse_record(record_to_line(r), 1);
  EXPECT_EQ(back.tuple, fi.tuple);
  EXPECT_EQ(back.structural_parts, fi.part_values());
  ASSERT_TRUE(back.universe);
  EXPECT_EQ(back.universe->tag, UniverseTag::U);
  EXPECT_TRUE(back.universe->forbidden.contains(Int(3)));
  EXPECT_THROW(parse_record("{}", 4), parse_error);
  EXPECT_THROW(parse_record(R"({"entries": ["1", "x", "-1"]})", 1), parse_error);
  EXPECT_THROW(parse_record(R"({"entries": ["1", "0", "-1"]})", 1), parse_error);
  EXPECT_THROW(parse_record(R"({"entries": ["1", "2", "-3"], "universe": "Q"})", 1), parse_error);
  try {
    parse_record("[", 17);
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 17u);
  }
}

TEST(Records, Csv) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(format_real(1.0234120783723573), "1.023412");
}
