#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(ASYM_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("asym_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("classify the T/A preset") {
  TempDir tmp;
  REQUIRE(run("preset --device ta --out " + (tmp / "ta.json")).code == 0);
  const auto r = run("classify --profile " + (tmp / "ta.json") + " --v-over-vd 400");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["symmetries"] == nlohmann::json::array({"I", "VIII"}));
  const auto devices = j["allowed_devices"];
  CHECK(std::find(devices.begin(), devices.end(), "T/A") != devices.end());
  CHECK(j["flags"]["VIII"]["phase"].get<double>() == doctest::Approx(1.5707963267948966));
}

TEST_CASE("classify an empty profile") {
  TempDir tmp;
  write(tmp / "empty.json", R"({"terms":[],"tau_delta":0,"tau_gamma":0})");
  const auto r = run("classify --profile " + (tmp / "empty.json"));
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["degenerate"] == true);
}

TEST_CASE("input errors exit with 2") {
  TempDir tmp;
  CHECK(run("classify --profile " + (tmp / "missing.json")).code == 2);
  write(tmp / "bad.json", R"({"terms":[{"re":1}],"tau_delta":0,"tau_gamma":0})");
  CHECK(run("classify --profile " + (tmp / "bad.json")).code == 2);
  REQUIRE(run("preset --device ta --out " + (tmp / "ta.json")).code == 0);
  CHECK(run("solve --profile " + (tmp / "ta.json") + " --v-over-vd 0").code == 2);
  CHECK(run("solve --profile " + (tmp / "ta.json") + " --v-over-vd -3").code == 2);
  CHECK(run("solve --profile " + (tmp / "ta.json") + " --v-over-vd 400 --v-min 1 --v-max 2 --v-steps 3")
            .code == 2);
  CHECK(run("sweep --profile " + (tmp / "ta.json") + " --v-over-vd 400").code == 2);
  CHECK(run("solve --profile " + (tmp / "ta.json") + " --v-over-vd 400 --format xml").code == 2);
  CHECK(run("solve --profile " + (tmp / "ta.json") + " --v-over-vd 400 --tol -1").code == 2);
  CHECK(run("optimize --device xyz --v-over-vd 400 --out " + (tmp / "o.json")).code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("physics preconditions exit with 4") {
  TempDir tmp;
  // E = 8 at v/vd = 4; tau_delta = -8 puts mu exactly at -1
  write(tmp / "thr.json",
        R"({"terms":[{"re":1,"im":0,"center_over_d":0,"w_over_d":0.2}],"tau_delta":-8,"tau_gamma":0})");
  CHECK(run("kernel --profile " + (tmp / "thr.json") + " --v-over-vd 4 --grid 11").code == 4);
}

TEST_CASE("numerical failures exit with 3") {
  TempDir tmp;
  REQUIRE(run("preset --device ta --out " + (tmp / "ta.json")).code == 0);
  CHECK(run("solve --profile " + (tmp / "ta.json") + " --v-over-vd 400 --tol 1e-40").code == 3);
}

TEST_CASE("solve summary and csv") {
  TempDir tmp;
  REQUIRE(run("preset --device ta --out " + (tmp / "ta.json")).code == 0);
  const auto r = run("solve --profile " + (tmp / "ta.json") + " --v-over-vd 400 --format json --out " +
                     (tmp / "s.csv"));
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["T2l"].get<double>() > 0.95);
  CHECK(j["T2r"].get<double>() < 0.05);
  const auto csv = slurp(tmp / "s.csv");
  CHECK(csv.rfind("# asym ", 0) == 0);
  CHECK(csv.find("v_over_vd,T2l,T2r,R2l,R2r,absorb_l,absorb_r") != std::string::npos);
}

TEST_CASE("T/A sweep peaks near 400 and is reproducible") {
  TempDir tmp;
  REQUIRE(run("preset --device ta --out " + (tmp / "ta.json")).code == 0);
  const std::string args = "sweep --profile " + (tmp / "ta.json") +
                           " --v-min 320 --v-max 480 --v-steps 81 --out ";
  REQUIRE(run(args + (tmp / "a.csv")).code == 0);
  REQUIRE(run(args + (tmp / "b.csv")).code == 0);
  const auto a = slurp(tmp / "a.csv");
  CHECK(a == slurp(tmp / "b.csv"));

  std::istringstream is(a);
  std::string line;
  std::getline(is, line);
  CHECK(line.find("command=sweep") != std::string::npos);
  CHECK(line.find("v_steps=81") != std::string::npos);
  std::getline(is, line);
  CHECK(line == "v_over_vd,T2l,T2r,R2l,R2r,absorb_l,absorb_r");
  double best = 0.0, best_v = 0.0;
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    double v, tl;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &v, &tl) == 2);
    if (tl > best) best = tl, best_v = v;
  }
  CHECK(rows == 81);
  CHECK(best > 0.95);
  CHECK(std::abs(best_v - 400.0) <= 40.0);
}

TEST_CASE("kernel and semiclassical csv") {
  TempDir tmp;
  REQUIRE(run("preset --device ta --out " + (tmp / "ta.json")).code == 0);
  REQUIRE(run("kernel --profile " + (tmp / "ta.json") + " --v-over-vd 400 --grid 21 --out " +
              (tmp / "k.csv"))
              .code == 0);
  const auto k = slurp(tmp / "k.csv");
  CHECK(k.find("x_over_d,y_over_d,absV_over_V0,argV") != std::string::npos);
  CHECK(std::count(k.begin(), k.end(), '\n') == 2 + 21 * 21);

  const auto r = run("semiclassical --profile " + (tmp / "ta.json") +
                     " --v-over-vd 400 --direction right --samples 51 --out " + (tmp / "t.csv"));
  REQUIRE(r.code == 0);
  const auto t = slurp(tmp / "t.csv");
  CHECK(t.find("t_over_tau,pop_ground,pop_excited") != std::string::npos);
  CHECK(std::count(t.begin(), t.end(), '\n') == 2 + 51);
  CHECK(run("semiclassical --profile " + (tmp / "ta.json") + " --v-over-vd 400 --direction up")
            .code == 2);
}

TEST_CASE("verify on a random profile") {
  const auto r = run("verify --seed 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("flux_left PASS") != std::string::npos);
  CHECK(r.out.find("flux_right PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("short optimize run writes a profile and a log") {
  TempDir tmp;
  const auto r = run("optimize --device ta --v-over-vd 400 --budget 20 --out " + (tmp / "o.json") +
                     " --log " + (tmp / "o.csv"));
  REQUIRE(r.code == 0);
  CHECK(r.out.find("device=T/A") != std::string::npos);
  CHECK(run("classify --profile " + (tmp / "o.json")).out.find("\"VIII\"") != std::string::npos);
  CHECK(slurp(tmp / "o.csv").find("iteration,evaluations,J,a_tau") != std::string::npos);
}
