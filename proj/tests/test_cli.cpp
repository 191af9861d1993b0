#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rotor_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  Outcome run(const std::string& args) const {
    fs::path o = dir_ / "stdout", e = dir_ / "stderr";
    std::string cmd = "\"" + std::string(ROTOR_CLI_PATH) + "\" " + args + " > \"" + o.string() + "\" 2> \"" +
                      e.string() + "\"";
    int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
  }

  fs::path write(const std::string& name, const std::string& text) const {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static int lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
  }

  static double max_error(const std::string& err) {
    auto at = err.find("max_error=");
    if (at == std::string::npos) return -1;
    return std::stod(err.substr(at + 10));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EllipseKinematicsCsv) {
  Outcome r = run("kinematics --curve ellipse --a 2 --b 1 --samples 5");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), 6);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,D,dD,d2D,rot_speed");
  std::istringstream in(r.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(first, "0,2,0,-1.5,0.5");
}

TEST_F(Cli, CenterOnCurveExitsThree) {
  Outcome r = run("kinematics --curve circle --radius 1 --frame point:1,0 --samples 5");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("CenterOnCurve at t="), std::string::npos) << r.err;
}

TEST_F(Cli, JsonMatchesCsv) {
  Outcome c = run("kinematics --curve helix --radius 1 --pitch 0.5 --param x0=2 --param y0=2 --param z0=1 --samples 7");
  Outcome j = run("kinematics --curve helix --radius 1 --pitch 0.5 --param x0=2 --param y0=2 --param z0=1 --samples 7 "
                  "--format json");
  ASSERT_EQ(c.code, 0) << c.err;
  ASSERT_EQ(j.code, 0) << j.err;
  auto doc = nlohmann::json::parse(j.out);
  ASSERT_EQ(doc.size(), 7u);
  std::istringstream in(c.out);
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header, "t,D,dD,d2D,rot_speed,speed_A,speed_B,speed_C");
  for (const auto& obj : doc) {
    std::getline(in, row);
    std::istringstream cells(row);
    std::string cell;
    for (const char* key : {"t", "D", "dD", "d2D", "rot_speed", "speed_A", "speed_B", "speed_C"}) {
      std::getline(cells, cell, ',');
      EXPECT_EQ(std::stod(cell), obj.at(key).get<double>()) << key;
    }
  }
}

TEST_F(Cli, LocalFrameColumns) {
  Outcome r = run("kinematics --curve ellipse --frame local --samples 3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,D,dD,d2D,rot_speed,phi,psi_speed");
}

TEST_F(Cli, FocusFrameNeedsEllipse) {
  EXPECT_EQ(run("kinematics --curve circle --frame focus").code, 2);
  Outcome r = run("kinematics --curve ellipse --frame focus --samples 2");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  std::istringstream cells(first);
  std::string t, d;
  std::getline(cells, t, ',');
  std::getline(cells, d, ',');
  EXPECT_EQ(std::stod(t), 0);
  EXPECT_NEAR(std::stod(d), 2 - std::sqrt(3.0), 1e-15);
}

TEST_F(Cli, FormulaCurve) {
  Outcome r = run("kinematics --x \"2*cos(t)\" --y \"sin(t)\" --domain 0,6.283185307179586 --samples 5");
  Outcome c = run("kinematics --curve ellipse --samples 5");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 40), c.out.substr(0, 40));
  EXPECT_EQ(run("kinematics --x \"2*cos(t)\" --y \"a\" --domain 0,1").code, 2);
  EXPECT_EQ(run("kinematics --x \"1/t\" --y \"t\" --domain 0,1 --samples 3").code, 3);
}

TEST_F(Cli, ReconstructEllipseOrigin) {
  Outcome r = run("reconstruct --preset ellipse-origin");
  ASSERT_EQ(r.code, 0) << r.err;
  double e = max_error(r.err);
  EXPECT_GE(e, 0);
  EXPECT_LT(e, 1e-6);
  EXPECT_EQ(lines(r.out), 10002);
  Outcome d = run("reconstruct");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.out, r.out);
}

TEST_F(Cli, ReconstructFocusAndHelix) {
  Outcome f = run("reconstruct --preset ellipse-focus --second-order");
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_LT(max_error(f.err), 1e-6);
  Outcome h = run("reconstruct --preset helix");
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_LT(max_error(h.err), 1e-5);
  EXPECT_EQ(h.out.substr(0, h.out.find('\n')), "t,x,y,z");
}

TEST_F(Cli, ReconstructCollapseExitsThree) {
  Outcome r = run("reconstruct --preset helix --domain -2,0");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("ProjectionCollapse at t="), std::string::npos) << r.err;
}

TEST_F(Cli, CoarseStepMissesTolerance) {
  Outcome r = run("reconstruct --preset ellipse-origin --step 0.06283185307179587");
  EXPECT_EQ(r.code, 1);
  EXPECT_GT(max_error(r.err), 1e-6);
}

TEST_F(Cli, VerifyPassesAndFaultInjectionFailsPsiCheck) {
  Outcome ok = run("verify");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_EQ(lines(ok.out), 12);
  for (int i = 1; i <= 12; ++i) EXPECT_NE(ok.out.find("PASS AC" + std::to_string(i) + " "), std::string::npos) << i;

  Outcome bad = run("verify --inject-psi-fault");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("FAIL AC3 "), std::string::npos) << bad.out;
  EXPECT_NE(bad.out.find("PASS AC1 "), std::string::npos) << bad.out;
}

TEST_F(Cli, VerifyFilterByTag) {
  Outcome r = run("verify --filter ellipse");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(lines(r.out), 4);
  for (const char* id : {"AC6 ", "AC7 ", "AC8 ", "AC9 "}) EXPECT_NE(r.out.find(id), std::string::npos) << id;
  EXPECT_EQ(run("verify --filter nothing-matches").code, 2);
}

TEST_F(Cli, ConfigurationErrorsExitTwo) {
  EXPECT_EQ(run("kinematics --curve spiral").code, 2);
  EXPECT_EQ(run("kinematics --curve ellipse --a 1 --b 2").code, 2);
  EXPECT_EQ(run("kinematics --samples 1").code, 2);
  EXPECT_EQ(run("kinematics --format xml").code, 2);
  EXPECT_EQ(run("kinematics --frame sideways").code, 2);
  EXPECT_EQ(run("kinematics --param radius").code, 2);
  EXPECT_EQ(run("reconstruct --preset nope").code, 2);
  EXPECT_EQ(run("--no-such-flag kinematics").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("kinematics --config /nonexistent/run.json").code, 2);
  EXPECT_EQ(run("kinematics --config " + write("bad.json", "{\"curve\": \"ellipse\", \"colour\": 3}").string()).code, 2);
  EXPECT_EQ(run("kinematics --config " + write("broken.json", "{").string()).code, 2);
  EXPECT_EQ(run("ellipse --config " + write("cmd.json", "{\"command\": \"verify\"}").string()).code, 2);
}

TEST_F(Cli, ConfigFileAndFlagOverride) {
  fs::path cfg = write("run.json", R"({"command": "kinematics", "curve": {"name": "ellipse", "params": {"a": 3, "b": 1}},
                                       "samples": 4, "frame": "origin"})");
  Outcome a = run("kinematics --config " + cfg.string());
  Outcome b = run("kinematics --curve ellipse --a 3 --b 1 --samples 4");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  Outcome c = run("kinematics --config " + cfg.string() + " --samples 9");
  EXPECT_EQ(lines(c.out), 10);
}

TEST_F(Cli, SurfaceAndEllipseTables) {
  Outcome s = run("surface --surface sphere --surface-param cx=2 --surface-param cy=1 --samples 5");
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.out.substr(0, s.out.find('\n')), "t,D,dD,d2D,rot_speed,speed_A,speed_B,speed_C,phi,psi_A,psi_B,psi_C");
  EXPECT_EQ(lines(s.out), 6);
  Outcome e = run("ellipse --a 2 --b 1 --samples 9");
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_EQ(lines(e.out), 10);
}

TEST_F(Cli, OutputIsDeterministic) {
  fs::path p1 = dir_ / "a.csv", p2 = dir_ / "b.csv";
  const std::string args = "kinematics --curve twisted_cubic --param z0=1 --param x0=0.5 --samples 300 --out ";
  ASSERT_EQ(run(args + p1.string()).code, 0);
  ASSERT_EQ(run(args + p2.string()).code, 0);
  std::string a = slurp(p1), b = slurp(p2);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find('\r'), std::string::npos);
}
