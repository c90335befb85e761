#ifdef MEPPROVE_HAVE_CLI

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mepprove/cli.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mepprove::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mepprove_cli_" + name);
}

const char* kG =
    "2 - 6*exp(-x) - x^3*exp(-x) + 6*exp(-2*x) - x^3*exp(-2*x) - 2*exp(-3*x) > 0";

}  // namespace

TEST(Cli, ProveWritesVerifiableCertificate) {
  const auto cert = temp_file("g.json");
  std::filesystem::remove(cert);
  const CliRun r = run({"prove", kG, "--on", "0,1", "--cert", cert.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(std::filesystem::exists(cert));
  EXPECT_EQ(run({"verify", cert.string()}).code, 0);

  std::ifstream in(cert);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  const auto pos = text.find("\"v_b\"");
  ASSERT_NE(pos, std::string::npos);
  const auto digit = text.find_first_of("0123456789", pos);
  text[digit] = text[digit] == '9' ? '8' : static_cast<char>(text[digit] + 1);
  std::ofstream(cert) << text;
  EXPECT_EQ(run({"verify", cert.string()}).code, 1);

  std::ofstream(cert) << "{\"input\": 3}";
  EXPECT_EQ(run({"verify", cert.string()}).code, 3);
  std::filesystem::remove(cert);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"prove", "exp(-x) - 1 + x - x^2/2 > 0", "--on", "0,1"}).code, 1);
  EXPECT_EQ(run({"prove", "exp(x^2) > 0", "--on", "0,1"}).code, 3);
  EXPECT_EQ(run({"prove", "x > 0", "--on", "1,0"}).code, 3);
  EXPECT_EQ(run({"prove", "x - x > 0", "--on", "0,1"}).code, 1);
  EXPECT_EQ(run({"prove", "x - x >= 0", "--on", "0,1"}).code, 0);

  const auto cert = temp_file("undecided.json");
  std::filesystem::remove(cert);
  const CliRun r = run({"prove", kG, "--on", "0,1", "--max-l", "1", "--cert", cert.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(std::filesystem::exists(cert));
}

TEST(Cli, FalsifyReportsNegativeWitness) {
  const CliRun r = run({"--json", "prove", "exp(-x) - 1 + x - x^2/2 > 0", "--on", "0,1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("\"witness\""), std::string::npos) << r.out;
}

TEST(Cli, OtherSubcommands) {
  const CliRun fam = run({"family", "1/x^2 - exp(-x)/(1-exp(-x))^2", "--on", "0,1", "--endpoint-a", "1/12",
                       "--endpoint-b", "(e^2 - 3*e + 1)/(e - 1)^2"});
  EXPECT_EQ(fam.code, 0) << fam.err;
  EXPECT_NE(fam.out.find("decreasing"), std::string::npos);

  const CliRun ev = run({"eval", "exp(1/2)"});
  EXPECT_EQ(ev.code, 0);
  EXPECT_NE(ev.out.find("1.6487212707"), std::string::npos) << ev.out;

  const CliRun t = run({"taylor", "--order", "3"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("1/6"), std::string::npos) << t.out;

  const CliRun g = run({"grid", "sign(a)*exp(a*x) <= sign(a)*(a*x*(1-x) + x^2*(exp(a)-1) + 1)", "--x", "0,1", "--a",
                     "-5,5", "--steps", "5"});
  EXPECT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(run({"grid", "x < 1/2", "--x", "0,1", "--a", "0,1", "--steps", "3"}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 3);
}

#endif
