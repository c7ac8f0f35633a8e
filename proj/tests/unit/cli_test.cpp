#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"
#include "weakframe/io.hpp"

using namespace weakframe;
using namespace weakframe::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kExe = FRENET_WEAK_EXE;
const fs::path kData = TEST_DATA_DIR;

struct Process {
  int code = -1;
  std::string out;
};

Process run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + kExe.string() + " " + args + " 2>/dev/null";
  Process r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("frenet_weak_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "out") const { return "--out-dir " + (dir_ / sub).string(); }
  fs::path dir_;
};

TEST_F(CliTest, AnalyzeStaircase) {
  const Process r = run("analyze " + (kData / "staircase.txt").string() + " " + out());
  ASSERT_EQ(r.code, 0);
  const AnalysisReport rep = report_from_json(r.out);
  EXPECT_EQ(rep.schema, 1);
  EXPECT_EQ(rep.status, "ok");
  EXPECT_NEAR(rep.values.at("tat"), kPi / 2, 1e-15);
  EXPECT_NEAR(rep.values.at("tc"), kPi, 1e-15);
  EXPECT_TRUE(fs::exists(rep.files.at("tantrix")));
  EXPECT_TRUE(fs::exists(rep.files.at("normal")));
}

TEST_F(CliTest, AnalyzePlanarAndJson) {
  const Process r = run("analyze " + (kData / "planar.txt").string() + " " + out());
  ASSERT_EQ(r.code, 0);
  const AnalysisReport rep = report_from_json(r.out);
  EXPECT_EQ(rep.values.at("tat"), 0.0);
  EXPECT_EQ(rep.values.at("ct"), 0.0);
  const Process sq = run("analyze " + (kData / "square.json").string() + " " + out());
  ASSERT_EQ(sq.code, 0);
  EXPECT_NEAR(report_from_json(sq.out).values.at("tc"), 2 * kPi, 1e-14);
}

TEST_F(CliTest, AnalyzeWritesBinormalCsv) {
  const Process r = run("analyze " + (kData / "twisted.txt").string() + " " + out());
  ASSERT_EQ(r.code, 0);
  const std::string csv = slurp(report_from_json(r.out).files.at("binormal"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "s,x,y,z,sheet");
}

TEST_F(CliTest, ValidationErrorsExitTwo) {
  EXPECT_EQ(run("analyze " + (kData / "one_vertex.txt").string()).code, 2);
  const Process bad = run("analyze " + (kData / "bad_number.txt").string());
  EXPECT_EQ(bad.code, 2);
  const AnalysisReport rep = report_from_json(bad.out);
  EXPECT_EQ(rep.status, "error");
  EXPECT_NE(rep.error.find("line 3, column 5"), std::string::npos) << rep.error;
  EXPECT_EQ(run("analyze /nonexistent.txt").code, 2);
  EXPECT_EQ(run("converge --model nosuch").code, 2);
  EXPECT_EQ(run("converge --model helix --param R").code, 2);
  EXPECT_EQ(run("converge --model helix --levels zero").code, 2);
  EXPECT_EQ(run("analyze " + (kData / "staircase.txt").string() + " --return-dir 1,2").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(CliTest, ConvergeHelix) {
  const Process r = run("converge --model helix " + out());
  ASSERT_EQ(r.code, 0);
  const AnalysisReport rep = report_from_json(r.out);
  EXPECT_NEAR(rep.values.at("tat"), kPi * kSqrt2, 1e-2);
  ASSERT_EQ(rep.levels.size(), 8u);
  EXPECT_EQ(rep.levels[0].segments, 64u);
  ASSERT_EQ(rep.identities.size(), 3u);
  for (const IdentityRow& i : rep.identities) EXPECT_TRUE(i.pass) << i.name;
}

TEST_F(CliTest, ConvergeInflection) {
  const Process r = run("converge --model inflection " + out());
  ASSERT_EQ(r.code, 0);
  const AnalysisReport rep = report_from_json(r.out);
  EXPECT_NEAR(rep.values.at("tc"), kPi / kSqrt2, 1e-2);
  EXPECT_NEAR(rep.values.at("tat"), kPi / kSqrt2, 1e-2);
  EXPECT_NEAR(rep.values.at("ct"), kPi / kSqrt2 + kPi, 5e-2);
}

TEST_F(CliTest, ConvergeCircle) {
  const Process r = run("converge --model circle " + out());
  ASSERT_EQ(r.code, 0);
  for (const LevelRow& l : report_from_json(r.out).levels) EXPECT_EQ(l.tat, 0.0);
}

TEST_F(CliTest, NonConvergenceExitsThree) {
  const Process r = run("converge --model blowup --param delta=0.01 --levels 4 " + out());
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(report_from_json(r.out).status, "not_converged");
}

TEST_F(CliTest, Forces) {
  const Process sq = run("forces --input " + (kData / "square.json").string() + " " + out());
  ASSERT_EQ(sq.code, 0);
  const AnalysisReport a = report_from_json(sq.out);
  EXPECT_NEAR(a.values.at("tc_star"), 4 * kSqrt2, 1e-14);
  ASSERT_EQ(a.measures.size(), 1u);
  EXPECT_EQ(a.measures[0].atoms.size(), 4u);

  const Process line = run("forces --model line " + out());
  ASSERT_EQ(line.code, 0);
  for (const MeasureSummary& m : report_from_json(line.out).measures) {
    EXPECT_TRUE(m.atoms.empty());
    EXPECT_EQ(m.density_cells, 0u);
  }

  const Process h = run("forces --model helix --levels 6 " + out());
  ASSERT_EQ(h.code, 0);
  const AnalysisReport hr = report_from_json(h.out);
  std::istringstream csv(slurp(hr.files.at("torsion_force_density")));
  std::string line_text;
  std::getline(csv, line_text);
  EXPECT_EQ(line_text, "param,vx,vy,vz,step");
  while (std::getline(csv, line_text)) {
    double p, x, y, z;
    char c;
    std::istringstream ls(line_text);
    ls >> p >> c >> x >> c >> y >> c >> z;
    EXPECT_NEAR(Vec3(x, y, z).norm(), 1.0, 1e-9);
  }
}

TEST_F(CliTest, WitnessIsDeterministic) {
  const Process a = run("witness " + out("a"));
  const Process b = run("witness " + out("b"), "FRENET_WEAK_THREADS=1");
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_GT(report_from_json(a.out).values.at("gap"), 1e-3);
  EXPECT_EQ(slurp(dir_ / "a" / "witness_P.txt"), slurp(dir_ / "b" / "witness_P.txt"));
  const Polygonal3 p = read_polygonal(dir_ / "a" / "witness_P.txt");
  const Polygonal3 q = read_polygonal(dir_ / "a" / "witness_P_prime.txt");
  for (const Vec3& v : q.vertices())
    EXPECT_NE(std::find(p.vertices().begin(), p.vertices().end(), v), p.vertices().end());
}

TEST_F(CliTest, WitnessSearchFailureExitsFour) {
  // TAT(P') <= TC(P') < 6π for six segments.
  const Process r = run("witness --budget 2000 --min-gap 100 " + out());
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(report_from_json(r.out).status, "error");
}

TEST_F(CliTest, Lift) {
  const Process r = run("lift " + (kData / "half_turn.csv").string() + " " + out());
  ASSERT_EQ(r.code, 0);
  const AnalysisReport rep = report_from_json(r.out);
  EXPECT_EQ(rep.values.at("closing_sign"), -1.0);
  EXPECT_NEAR(rep.values.at("length"), kPi, 1e-14);
  const std::string csv = slurp(rep.files.at("lifted"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "s,x,y,z");
}

TEST_F(CliTest, ReportsAreDeterministicModuloTimestamp) {
  const std::string args = "converge --model inflection --levels 6 --tol-converge 1e-2 --report ";
  ASSERT_EQ(run(args + (dir_ / "r1.json").string() + " " + out("o1"), "FRENET_WEAK_THREADS=1").code, 0);
  ASSERT_EQ(run(args + (dir_ / "r2.json").string() + " " + out("o1"), "FRENET_WEAK_THREADS=4").code, 0);
  const AnalysisReport a = report_from_json(slurp(dir_ / "r1.json"));
  const AnalysisReport b = report_from_json(slurp(dir_ / "r2.json"));
  EXPECT_TRUE(same_content(a, b));
  std::string ja = slurp(dir_ / "r1.json"), jb = slurp(dir_ / "r2.json");
  ja.erase(ja.find("\"timestamp\""), ja.find('\n', ja.find("\"timestamp\"")) - ja.find("\"timestamp\""));
  jb.erase(jb.find("\"timestamp\""), jb.find('\n', jb.find("\"timestamp\"")) - jb.find("\"timestamp\""));
  EXPECT_EQ(ja, jb);
}

TEST(Commands, ModelsAndExitCodes) {
  EXPECT_THROW(cli::make_model({"helix", {{"Q", 1.0}}}), GeometryError);
  EXPECT_THROW(cli::make_model({"blowup", {{"delta", 2.0}}}), GeometryError);
  for (const std::string& name : cli::model_names()) EXPECT_NO_THROW(cli::make_model({name, {}})) << name;
  EXPECT_EQ(cli::exit_code_for(ErrorCode::ParseError), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorCode::UnknownModel), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorCode::NotConverged), 3);
  EXPECT_EQ(cli::exit_code_for(ErrorCode::SearchFailed), 4);
}

TEST(Commands, GuardedTurnsErrorsIntoReports) {
  const cli::CommandResult r =
      cli::guarded("witness", []() -> cli::CommandResult { throw GeometryError(ErrorCode::SearchFailed, "none"); });
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_EQ(r.report.status, "error");
  EXPECT_EQ(r.report.command, "witness");
}

}  // namespace
