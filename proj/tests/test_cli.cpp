#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string output;  // stdout and stderr together
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KANESI_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.output += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("kanesi_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string config_path(const std::string& name) { return std::string(KANESI_CONFIG_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("missing gate is a config error") {
    const auto dir = scratch("nogate");
    const auto r = run("hic --out-dir " + dir.string());
    CHECK(r.code == 2);
    CHECK(r.output.find("gate.kind required") != std::string::npos);
  }

  TEST_CASE("missing unit and unknown key are config errors") {
    const auto dir = scratch("badunit");
    CHECK(run("hic --set gate.kind=disc --set gate.a=5 --set 'gate.c=10 nm' --out-dir " + dir.string()).code ==
          2);
    CHECK(run("hic --set gate.colour=red --out-dir " + dir.string()).code == 2);
    CHECK(run("hic --format xml").code == 2);
  }

  TEST_CASE("disc HIC table") {
    const auto dir = scratch("hic");
    const auto r = run("hic --config " + config_path("disc_hic.json") +
                       " --set 'voltage=[\"0 V\", \"0.5 V\", \"1 V\"]' --format csv --out-dir " + dir.string());
    REQUIRE(r.code == 0);
    const auto csv = slurp(dir / "hic.csv");
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 4);
    std::istringstream in(csv);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(first.rfind("0,0", 0) == 0);
    CHECK_FALSE(fs::exists(dir / "hic.json"));
  }

  TEST_CASE("output is deterministic") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    const std::string args = "spectrum --config " + config_path("fig3_spectrum.json") +
                             " --set 'sweep.beta={\"from\":0.5,\"to\":1.5,\"points\":41}' --out-dir ";
    REQUIRE(run(args + a.string()).code == 0);
    REQUIRE(run(args + b.string()).code == 0);
    for (const char* f : {"spectrum.csv", "spectrum.json", "anticrossings.json"}) {
      CHECK(fs::exists(a / f));
      CHECK(slurp(a / f) == slurp(b / f));
    }
  }

  TEST_CASE("single-point spectrum") {
    const auto dir = scratch("one");
    const auto r = run("spectrum --set 'sweep.beta=[1.0]' --format csv --out-dir " + dir.string());
    REQUIRE(r.code == 0);
    const auto csv = slurp(dir / "spectrum.csv");
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 17);
  }

  TEST_CASE("empty nulling search warns and writes a header") {
    const auto dir = scratch("nulling");
    const auto r = run("error-budget --config " + config_path("strip_budget.json") +
                       " --set 'nulling.c={\"from\":\"12 nm\",\"to\":\"12 nm\"}' --set nulling.target=1e-9" +
                       " --out-dir " + dir.string());
    CHECK(r.code == 0);
    const auto csv = slurp(dir / "nulling.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
    CHECK(r.output.find("warning") != std::string::npos);
  }

  TEST_CASE("validate subset") {
    const auto r = run("validate --only 1");
    CHECK(r.code == 0);
    CHECK(r.output.find("[PASS]") != std::string::npos);
    CHECK(run("validate --only 14").code == 2);
  }
}
