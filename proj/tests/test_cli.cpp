#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "bpsw/bpsw.hpp"
#include "bpsw/report.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + BPSW_CLI_PATH + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p) != nullptr) r.out += buf.data();
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("bpsw_cli_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, TestExitCodes) {
  const auto comp = run("test 2047 --variant enhanced");
  EXPECT_EQ(comp.status, 1);
  EXPECT_TRUE(has(comp.out, "failed-slprp (step 3)")) << comp.out;
  EXPECT_EQ(run("test 104729").status, 0);
  EXPECT_EQ(run("test 0x7ff").status, 1);
  EXPECT_EQ(run("test 12abc").status, 2);
  EXPECT_EQ(run("test 1").status, 2);
  EXPECT_EQ(run("test 7 --method Z").status, 2);
}

TEST(Cli, DiagnosticSkipStep1On913) {
  const auto r = run("test 913 --variant original --skip-step1");
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(has(r.out, "step 3 strong-lucas")) << r.out;
  EXPECT_TRUE(has(r.out, "diagnostic vprp: yes"));
  EXPECT_TRUE(has(r.out, "diagnostic lprp: no"));
}

TEST(Cli, JsonOutputParsesBackToTheLibraryReport) {
  const auto r = run("test 5459 -o json");
  EXPECT_EQ(r.status, 1);
  bpsw::PipelineOptions o;
  o.sieve_bound = 0;
  EXPECT_EQ(bpsw::report_from_json(r.out), bpsw::run_pipeline(5459, o));
}

TEST(Cli, CensusSummaryAndFiles) {
  const auto s = run("census --to 1e4 --method A*");
  EXPECT_EQ(s.status, 0);
  EXPECT_TRUE(has(s.out, "10000 A* 22 5 9 2 1")) << s.out;

  const auto dir = scratch("census");
  EXPECT_EQ(run("census --to 1e3 --out-dir " + dir.string()).status, 0);
  EXPECT_EQ(slurp(dir / "vpsp.txt"), "913\n");
  EXPECT_TRUE(has(slurp(dir / "counts.csv"), "bound,method,psp2,spsp2,epsp2,lpsp,slpsp,vpsp\n"));
}

TEST(Cli, MethodAAndAStarListsIdentical) {
  const auto a = scratch("a"), s = scratch("s");
  ASSERT_EQ(run("census --to 1e6 --method A --kinds lpsp --out-dir " + a.string()).status, 0);
  ASSERT_EQ(run("census --to 1e6 --method A* --kinds lpsp --out-dir " + s.string()).status, 0);
  const auto la = slurp(a / "lpsp.txt");
  EXPECT_FALSE(la.empty());
  EXPECT_EQ(la, slurp(s / "lpsp.txt"));
}

TEST(Cli, WorkersFromEnvironmentAndValidation) {
  EXPECT_EQ(run("census --to 1e5", "BPSW_WORKERS=3").status, 0);
  EXPECT_EQ(run("census --to 1e5", "BPSW_WORKERS=0").status, 2);
  EXPECT_EQ(run("census --to 1e5 --workers 0").status, 2);
  EXPECT_EQ(run("census --to 1e9").status, 2);  // above the ceiling
}

TEST(Cli, ConfigFile) {
  const auto dir = scratch("cfg");
  std::ofstream(dir / "bpsw.ini") << "method=B\noutput=csv\n";
  const auto r = run("--config " + (dir / "bpsw.ini").string() + " compare-methods --to 1e5 --methods B");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "method,lpsp,vpsp_q_pm1,vpsp_q_other,lpsp_and_vpsp")) << r.out;
}

TEST(Cli, Witness) {
  const auto r = run("witness 341");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  long p = 0, q = 0;
  in >> p >> q;
  EXPECT_TRUE(bpsw::is_lprp_and_vprp(341, bpsw::LucasParams::from_pq(p, q))) << r.out;
  EXPECT_EQ(run("witness 17").status, 2);
}

TEST(Cli, Theorem1AndLemma) {
  const auto t = run("theorem1 2047 1");
  EXPECT_EQ(t.status, 0);
  EXPECT_TRUE(has(t.out, "conclusions: yes")) << t.out;
  EXPECT_EQ(run("lemmaqr 2").out, "7\n");
  EXPECT_EQ(run("lemmaqr 4").out, "3\n");
}

TEST(Cli, FirstAndOverlap) {
  EXPECT_EQ(run("first spsp2").out, "2047, 3277, 4033, 4681, 8321, 15841, 29341, 42799, 49141, 52633\n");
  const auto o = run("overlap --to 1e5 -o json");
  EXPECT_EQ(o.status, 0);
  EXPECT_TRUE(has(o.out, "\"spsp2_slpsp_vpsp\": 0"));
}

TEST(Cli, VerifyCert) {
  const auto dir = scratch("cert");
  std::ofstream(dir / "r.json") << run("test 2047 -o json").out;
  EXPECT_EQ(run("verify-cert " + (dir / "r.json").string()).status, 0);

  bpsw::CompositeCertificate bad;
  bad.kind = bpsw::CertificateKind::SmallFactor;
  bad.n = 2047;
  bad.factor = 7;
  std::ofstream(dir / "bad.json") << bpsw::to_json(bad);
  const auto r = run("verify-cert " + (dir / "bad.json").string());
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(has(r.out, "invalid"));
  EXPECT_EQ(run("verify-cert " + (dir / "missing.json").string()).status, 2);
}
