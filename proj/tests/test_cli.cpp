// Runs the olab binary end to end: exit codes, output files, determinism.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + OLAB_BINARY + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("olab_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const std::string kBall = R"('{"type":"ball_indicator","center":[0],"radius":1}')";
const std::string kT2 = R"('{"kind":"power","p":2}')";
const std::string kBalanced = R"('{"young":{"kind":"power","p":2},"lambda":0,"alpha":0.25,"beta":0.5}')";

}  // namespace

TEST_CASE("norm prints the indicator norm") {
  const Run r = run("norm --input " + kBall + " --young " + kT2);
  CHECK(r.status == 0);
  CHECK(r.out == "1.41421356\n");
}

TEST_CASE("check writes a versioned CSV and a summary") {
  TempDir tmp;
  const fs::path csv = tmp.path / "necessary.csv";
  const Run r = run("--out " + csv.string() + " check --condition adams-necessary --setup " + kBalanced);
  CHECK(r.status == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("# olab-schema v1\n", 0) == 0);
  CHECK(text.find("holds-stable") != std::string::npos);
  CHECK(text.find("diverges") == std::string::npos);
  const std::string summary = slurp(tmp.path / "necessary.json");
  CHECK(summary.find("wall_time_s") != std::string::npos);
  CHECK(text.find("wall_time") == std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir tmp;
  const fs::path csv = tmp.path / "bad.csv";
  SUBCASE("malformed JSON is a parse error and writes nothing") {
    CHECK(run("--out " + csv.string() + " check --condition adams-necessary --setup '{\"young\":'").status == 2);
    CHECK(!fs::exists(csv));
    CHECK(!fs::exists(tmp.path / "bad.json"));
  }
  SUBCASE("unknown flags and kinds") {
    CHECK(run("norm --bogus").status == 2);
    CHECK(run("check --condition nonsense --setup " + kBalanced).status == 2);
    CHECK(run("norm --input " + kBall + R"( --young '{"kind":"cubic"}')").status == 2);
  }
  SUBCASE("alpha outside [0, n) is a domain error") {
    CHECK(run("operators --alpha 1.5 --input " + kBall).status == 3);
    CHECK(run(R"(check --condition adams-necessary --setup '{"young":{"kind":"power","p":2},"lambda":0,"alpha":2,"beta":0.5}')")
              .status == 3);
  }
  SUBCASE("balls the grid cannot resolve") {
    CHECK(run("adams --family witness --t0 64 --setup " + kBalanced).status == 4);
    CHECK(run("norm --input " + kBall + " --young " + kT2 + " --ball 40:1").status == 4);
  }
}

TEST_CASE("identical configs give byte-identical CSV under any thread count") {
  TempDir tmp;
  const std::string args[] = {
      "operators --alpha 0.5 --uncentered --input " + kBall,
      "adams --family random --count 4 --target weak --setup " + kBalanced,
      "probe --young " + kT2 + " --lambda 0.5",
      R"(--dim 2 --grid-h 0.125 --grid-extent 2 operators --operator riesz --alpha 1 --input '{"type":"gaussian","scale":0.5}')",
  };
  for (const auto& a : args) {
    const Run one = run(a, "OMP_NUM_THREADS=1");
    const Run many = run(a, "OMP_NUM_THREADS=8");
    const Run again = run(a, "OMP_NUM_THREADS=8");
    CHECK(one.status == 0);
    CHECK(one.out.size() > 20);
    CHECK(one.out == many.out);
    CHECK(many.out == again.out);
  }
}

TEST_CASE("uncentered flag changes the operator") {
  const Run c = run("operators --alpha 0.5 --input " + kBall);
  const Run u = run("operators --alpha 0.5 --uncentered --input " + kBall);
  CHECK(c.status == 0);
  CHECK(u.status == 0);
  CHECK(c.out != u.out);
}
