#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "stereo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = stereo::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Infer, MinimalRankExample) {
  const auto r = invoke({"infer", "--kb", "builtin:example3", "--given", "a | b", "--query", "a"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("F = {w3, w5}"), std::string::npos);
  EXPECT_NE(r.out.find("chosen: S3"), std::string::npos);
  EXPECT_NE(r.out.find("F' = {w3}"), std::string::npos);
  EXPECT_NE(r.out.find(": entailed"), std::string::npos);
}

TEST(Infer, Json) {
  const auto r = invoke({"infer", "--kb", "builtin:example3", "--given", "a | b", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["chosen"], "S3");
  EXPECT_EQ(j["consequences"], nlohmann::json::array({"w3"}));
  EXPECT_EQ(j["distances"][3]["value"], "3");
  EXPECT_EQ(j["distances"][4]["value"], "inf");
}

TEST(Infer, ContradictionAndReflexivity) {
  auto r = invoke({"infer", "--kb", "builtin:example4", "--given", "p & ~p", "--query", "q", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["consequences"].empty());
  EXPECT_TRUE(j["chosen"].is_null());
  EXPECT_TRUE(j["query"]["entailed"].get<bool>());
  EXPECT_TRUE(j["consistent"].get<bool>());
  r = invoke({"infer", "--kb", "builtin:example4", "--given", "p | r", "--query", "p | r", "--format", "json"});
  j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["query"]["entailed"].get<bool>());
}

TEST(Infer, Errors) {
  EXPECT_EQ(invoke({"infer", "--kb", "builtin:tie", "--given", "true"}).code, 3);
  const auto tie = invoke({"infer", "--kb", "builtin:tie", "--given", "true"});
  EXPECT_NE(tie.err.find("A"), std::string::npos);
  EXPECT_NE(tie.err.find("B"), std::string::npos);
  EXPECT_EQ(invoke({"infer", "--kb", "builtin:example3", "--given", "a &&"}).code, 2);
  EXPECT_EQ(invoke({"infer", "--kb", "builtin:example3", "--given", "zebra"}).code, 2);
  EXPECT_EQ(invoke({"infer", "--kb", "builtin:nothing", "--given", "a"}).code, 2);
  EXPECT_EQ(invoke({"infer", "--kb", "/no/such/file.json", "--given", "a"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST(Check, ExitCodes) {
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example2", "--property", "four"}).code, 1);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "eq2"}).code, 0);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "klm:or"}).code, 1);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example3", "--property", "klm:cumulativity"}).code, 0);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:tie", "--property", "klm:cut"}).code, 4);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "klm:nope"}).code, 2);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "eq2", "--budget", "10"}).code, 2);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "eq2", "--budget", "0"}).code, 2);
}

TEST(Check, AllIsMixed) {
  const auto r = invoke({"check", "--kb", "builtin:example4", "--property", "all", "--format", "json"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 11U);
  std::vector<std::string> failing;
  for (const auto& rep : j) {
    if (rep["verdict"] == "FAIL") failing.push_back(rep["property"]);
  }
  EXPECT_EQ(failing, (std::vector<std::string>{"assumption-four", "klm:or"}));
}

TEST(Check, TextAndJsonVerdictsAgree) {
  for (const char* property : {"zero", "eq2", "four", "tree", "klm:or", "klm:rw-and"}) {
    const auto text = invoke({"check", "--kb", "builtin:example4", "--property", property});
    const auto json = invoke({"check", "--kb", "builtin:example4", "--property", property, "--format", "json"});
    EXPECT_EQ(text.code, json.code);
    const std::string verdict = nlohmann::json::parse(json.out)["verdict"];
    EXPECT_EQ(text.out.rfind("[" + verdict + "]", 0), 0U) << property;
  }
}

TEST(Check, BudgetFromEnvironment) {
  setenv("STEREO_BUDGET", "10", 1);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "eq2"}).code, 2);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "eq2", "--budget", "100000"}).code, 0);
  setenv("STEREO_BUDGET", "garbage", 1);
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "eq2"}).code, 2);
  unsetenv("STEREO_BUDGET");
  EXPECT_EQ(invoke({"check", "--kb", "builtin:example4", "--property", "eq2"}).code, 0);
}

TEST(Verify, ExitCodes) {
  EXPECT_EQ(invoke({"verify", "--kb", "builtin:example3", "--theorem", "2"}).code, 0);
  EXPECT_EQ(invoke({"verify", "--kb", "builtin:example4", "--theorem", "2"}).code, 4);
  EXPECT_EQ(invoke({"verify", "--kb", "builtin:example2", "--theorem", "1"}).code, 0);
  EXPECT_EQ(invoke({"verify", "--kb", "builtin:theorem1-violation", "--theorem", "1"}).code, 1);
  EXPECT_EQ(invoke({"verify", "--kb", "builtin:example2", "--theorem", "3"}).code, 2);
}

TEST(Search, Summaries) {
  auto r = invoke({"search", "--n-worlds", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("0 found", 0), 0U);
  r = invoke({"search", "--n-worlds", "2"});
  EXPECT_EQ(r.out.rfind("0 found", 0), 0U);
  r = invoke({"search", "--n-worlds", "3", "--max-stereotypes", "2"});
  EXPECT_NE(r.out.find("found #"), std::string::npos);
  EXPECT_EQ(r.out.find("\n0 found"), std::string::npos);
  EXPECT_EQ(invoke({"search", "--n-worlds", "5"}).code, 2);
  EXPECT_EQ(invoke({"search", "--n-worlds", "0"}).code, 2);
  EXPECT_EQ(invoke({"search", "--n-worlds", "2", "--max-stereotypes", "9"}).code, 2);
}

TEST(Search, UnknownTailIsReported) {
  const auto r = invoke({"search", "--n-worlds", "3", "--max-stereotypes", "2", "--budget", "300"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("UNKNOWN tail"), std::string::npos);
}

TEST(Explain, Rows) {
  auto r = invoke({"explain", "--kb", "builtin:example4", "--given", "~r & ~(p & q) | (~p & q & ~r)"});
  EXPECT_EQ(r.code, 0);
  // F = {w0, w1, w2}: S0 at 0, S1 at 4/3, S2 at 8/3.
  const auto at0 = r.out.find("* S0  0"), at1 = r.out.find("  S1  4/3"), at2 = r.out.find("  S2  8/3");
  ASSERT_NE(at0, std::string::npos) << r.out;
  ASSERT_NE(at1, std::string::npos) << r.out;
  ASSERT_NE(at2, std::string::npos) << r.out;
  EXPECT_LT(at0, at1);
  EXPECT_LT(at1, at2);
  r = invoke({"explain", "--kb", "builtin:example1", "--given", "a"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("unique minimum: S0"), std::string::npos);
  r = invoke({"explain", "--kb", "builtin:tie", "--given", "true"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("NON-UNIQUE"), std::string::npos);
}
