#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  int status = std::system((std::string(CLI_BIN_PATH) + " " + args +
                            " > /dev/null 2>&1")
                               .c_str());
  return WEXITSTATUS(status);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("cvxjet_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("full pipeline: gen, feasibility, build, verify, export, sample") {
  TempDir tmp;
  std::string prob = tmp.file("prob.json"), body = tmp.file("body.json");
  CHECK(run("gen sphere --count 16 --dim 2 --out " + prob) == 0);
  CHECK(run("feasibility " + prob + " --class c11") == 0);
  CHECK(run("build " + prob + " --class c11 --auto --out " + body) == 0);
  CHECK(run("verify " + body + " --seed 3 --samples 60 --out " +
            tmp.file("rep.json")) == 0);
  CHECK(run("export " + body + " --format polyline --count 32 --seed 1 --out " +
            tmp.file("poly.txt")) == 0);
  CHECK(run("export " + body + " --format csv --count 16 --seed 1 --out " +
            tmp.file("b.csv")) == 0);
  CHECK(run("sample " + body + " --count 10 --seed 2 --out " +
            tmp.file("pts.txt")) == 0);
  CHECK_FALSE(slurp(tmp.file("pts.txt")).empty());
}

TEST_CASE("modulus and dual-exponent classes build and verify") {
  TempDir tmp;
  std::string prob = tmp.file("prob.json");
  CHECK(run("gen sphere --count 12 --dim 2 --out " + prob) == 0);
  std::string h = tmp.file("h.json"), a = tmp.file("a.json");
  CHECK(run("build " + prob + " --class c1omega --K 1 --alpha 0.5 --auto "
            "--out " + h) == 0);
  CHECK(run("verify " + h + " --seed 5 --samples 40") == 0);
  CHECK(run("build " + prob + " --class c1alpha --alpha 0.5 --auto --out " +
            a) == 0);
  CHECK(run("verify " + a + " --seed 5 --samples 40") == 0);
}

TEST_CASE("exit codes distinguish input and mathematical failures") {
  TempDir tmp;
  std::string prob = tmp.file("prob.json");
  CHECK(run("gen sphere --count 16 --dim 2 --out " + prob) == 0);
  // radius above the sharp constant: mathematical failure
  CHECK(run("feasibility " + prob + " --class c11 --radius 1.5") == 2);
  CHECK(run("build " + prob + " --class c11 --radius 1.5 --out " +
            tmp.file("b.json")) == 2);
  // missing and malformed files: input errors
  CHECK(run("feasibility " + tmp.file("missing.json")) == 1);
  std::ofstream(tmp.file("garbage.json")) << "{not json";
  CHECK(run("feasibility " + tmp.file("garbage.json")) == 1);
  // unknown class
  CHECK(run("feasibility " + prob + " --class c3") == 1);
}

TEST_CASE("verify runs are byte-identical for equal seeds") {
  TempDir tmp;
  std::string prob = tmp.file("prob.json"), body = tmp.file("body.json");
  CHECK(run("gen ellipse --count 20 --axes 2 1 --out " + prob) == 0);
  CHECK(run("build " + prob + " --class c11 --auto --out " + body) == 0);
  CHECK(run("verify " + body + " --seed 11 --samples 50 --out " +
            tmp.file("r1.json")) == 0);
  CHECK(run("verify " + body + " --seed 11 --samples 50 --out " +
            tmp.file("r2.json")) == 0);
  CHECK(slurp(tmp.file("r1.json")) == slurp(tmp.file("r2.json")));
}

TEST_CASE("cusp fixture flows through the dual-exponent class") {
  TempDir tmp;
  std::string prob = tmp.file("cusp.json");
  CHECK(run("gen cusp --count 10 --h-min 1e-3 --out " + prob) == 0);
  CHECK(run("feasibility " + prob + " --class c1alpha --alpha 0.5") == 0);
  CHECK(run("build " + prob + " --class c1alpha --alpha 0.5 --auto --out " +
            tmp.file("cb.json")) == 0);
}
