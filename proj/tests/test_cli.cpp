#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace biham::cli {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

TEST(Cli, ParseList) {
  EXPECT_EQ(parse_list("1, 2.5,-3"), (std::vector<double>{1, 2.5, -3}));
  EXPECT_THROW(parse_list("1,,2"), std::invalid_argument);
  EXPECT_THROW(parse_list("1,x"), std::invalid_argument);
  EXPECT_THROW(parse_list("inf"), std::invalid_argument);
}

TEST(Cli, VerifyWritesReport) {
  const std::string path = temp_path("cli_report.json");
  const Result r = call({"verify", "--mu", "1,2,3", "--points", "10", "--seed", "42", "--report", path});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["overall"], "pass");
  EXPECT_EQ(doc["seed"], 42);
}

TEST(Cli, VerifyDegenerateEigenvalue) {
  const Result r = call({"verify", "--mu", "1,-1,3", "--points", "5"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("degenerate constant eigenvalue"), std::string::npos);
}

TEST(Cli, VerifyGeneralModelSkipsSymmetricChecks) {
  const std::string path = temp_path("cli_general.json");
  const Result r = call({"verify", "--mu", "1,2,3,4", "--points", "5", "--report", path});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  for (const auto& c : doc["checks"])
    if (c["name"].get<std::string>().rfind("m.", 0) != 0) {
      EXPECT_EQ(c["status"], "skipped");
      EXPECT_TRUE(c.contains("note"));
    }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"verify"}).code, kExitUsage);
  EXPECT_EQ(call({"verify", "--mu", "1,2"}).code, kExitUsage);
  EXPECT_EQ(call({"verify", "--mu", "1,2,3", "--points", "0"}).code, kExitUsage);
  EXPECT_EQ(call({"verify", "--mu", "1,2,3", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(call({"frobnicate"}).code, kExitUsage);
}

TEST(Cli, IntegrateZeroStateCsv) {
  const std::string path = temp_path("cli_zero.csv");
  const Result r = call({"integrate", "--mu", "10,1,2", "--m0", "0,0,0,0,0,0", "--dt", "0.01",
                         "--t-end", "0.1", "--every", "2", "--out", path});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto lines = read_lines(path);
  ASSERT_GE(lines.size(), 3u);
  EXPECT_EQ(lines[0], "t,m12,m13,m14,m23,m24,m34,H0,C,HE,KE,zeta1");
  for (std::size_t i = 2; i < lines.size(); ++i)
    EXPECT_EQ(lines[i].substr(lines[i].find(',')), lines[1].substr(lines[1].find(',')));
  EXPECT_NE(r.out.find("H0=0 C=0 HE=0 KE=0 zeta1=0"), std::string::npos) << r.out;
}

TEST(Cli, IntegrateDefaultsReportSmallDrift) {
  const Result r = call({"integrate", "--mu", "10,1,2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto pos = r.out.find("max relative drift:");
  ASSERT_NE(pos, std::string::npos);
  std::istringstream in(r.out.substr(pos + 19));
  for (std::string tok; in >> tok;) {
    const double v = std::stod(tok.substr(tok.find('=') + 1));
    EXPECT_LE(v, 1e-8) << tok;
  }
}

TEST(Cli, IntegrateValidation) {
  EXPECT_EQ(call({"integrate", "--mu", "10,1,2", "--dt", "0"}).code, kExitUsage);
  EXPECT_EQ(call({"integrate", "--mu", "10,1,2", "--t-end", "-1"}).code, kExitUsage);
  EXPECT_EQ(call({"integrate", "--mu", "10,1,2", "--m0", "1,2,3"}).code, kExitUsage);
}

TEST(Cli, CsvUsesShortestRoundTrip) {
  const std::string path = temp_path("cli_short.csv");
  ASSERT_EQ(call({"integrate", "--mu", "10,1,2", "--m0", "0.1,0,0,0,0,0", "--dt", "0.5",
                  "--t-end", "0.5", "--out", path})
                .code,
            kExitOk);
  const auto lines = read_lines(path);
  EXPECT_EQ(lines[1].substr(0, 10), "0,0.1,0,0,");
}

TEST(Cli, DnHandExample) {
  const Result r = call({"dn", "--mu", "1,2,3", "--leaf", "1,0,0.3,0,2,0,-0.1,0", "--h0", "1,0",
                         "--c2", "0.5,0", "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["lambda2"][0].get<double>(), 6.5, 1e-15);
  EXPECT_NEAR(doc["lambda2"][1].get<double>(), 0.0, 1e-15);
  EXPECT_EQ(doc["lambda1"], 3.0);
  for (const char* key : {"bracket_residual_p", "bracket_residual_q"})
    for (const auto& row : doc[key])
      for (const auto& v : row) EXPECT_LE(v.get<double>(), 1e-10);
}

TEST(Cli, DnTextOutputAndGuards) {
  const Result ok = call({"dn", "--mu", "1,2,3", "--leaf", "1,0,0.3,0,2,0,-0.1,0", "--h0", "1,0",
                          "--c2", "0.5,0"});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_NE(ok.out.find("lambda2 = 6.5"), std::string::npos) << ok.out;
  const Result bad = call({"dn", "--mu", "1,2,3", "--leaf", "1,0,0.3,0,1,0,-0.1,0", "--h0", "1,0",
                           "--c2", "0.5,0"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("separation chart degenerate"), std::string::npos);
  EXPECT_EQ(call({"dn", "--mu", "1,2,3,4", "--leaf", "1,0,0.3,0,2,0,-0.1,0", "--h0", "1,0",
                  "--c2", "0.5,0"})
                .code,
            kExitUsage);
}

TEST(Cli, SeparationHandExample) {
  // u = v = 1, z = 0: Phi1 vanishes; G = 0 leaves Phi2 undefined.
  const Result hand = call({"separation", "--mu", "1,2,3", "--uv", "1,0,1,0,0,0,1,0,1,0,0,0"});
  ASSERT_EQ(hand.code, kExitOk) << hand.err;
  EXPECT_NE(hand.out.find("Phi1 = 0 "), std::string::npos) << hand.out;
  EXPECT_NE(hand.out.find("Phi2 = n/a (separation chart degenerate)"), std::string::npos);
  const Result r = call({"separation", "--mu", "1,2,3", "--uv", "1,0,1,0,0,0,2,0,0.5,0,0.3,0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* key : {"Phi1 = ", "Phi2 = "}) {
    const auto pos = r.out.find(key);
    ASSERT_NE(pos, std::string::npos);
    const auto norm = r.out.find("normalized ", pos);
    EXPECT_LE(std::stod(r.out.substr(norm + 11)), 1e-9) << r.out;
  }
  const Result zero_u = call({"separation", "--mu", "1,2,3", "--uv", "0,0,1,0,0,0,2,0,0.5,0,0.3,0"});
  EXPECT_EQ(zero_u.code, kExitUsage);
  EXPECT_EQ(call({"separation", "--mu", "1,2,3", "--uv", "1,0"}).code, kExitUsage);
}

}  // namespace
}  // namespace biham::cli
