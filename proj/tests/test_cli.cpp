#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sys/wait.h>

#include "gerbecalc/io.hpp"

using namespace gerbecalc;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "gerbecalc_cli_test";

std::string at(const std::string& name) { return (kDir / name).string(); }

/// Runs the CLI with the given arguments, output discarded; returns the exit code.
int run(const std::string& args) {
  fs::create_directories(kDir);
  const std::string cmd = std::string(GERBECALC_CLI) + " " + args + " >" + at("stdout.txt") + " 2>" + at("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json last_stdout() { return read_json_file(at("stdout.txt")); }

}  // namespace

TEST_CASE("gen reports mesh counts") {
  REQUIRE(run("gen torus 4 4 --mesh " + at("t44.json")) == 0);
  const json j = last_stdout();
  CHECK(j["vertices"] == 16);
  CHECK(j["triangles"] == 32);
  CHECK(j["euler_characteristic"] == 0);
  REQUIRE(run("gen sphere 1 --mesh " + at("s1.json")) == 0);
  CHECK(last_stdout()["euler_characteristic"] == 2);
}

TEST_CASE("validate accepts generated monopole data") {
  REQUIRE(run("gen monopole 4 4 --charge 2 --twisted --mesh " + at("m.json") + " --out " + at("md.json")) == 0);
  CHECK(run("validate --mesh " + at("m.json") + " --data " + at("md.json")) == 0);
  CHECK(last_stdout()["status"] == "PASS");
}

TEST_CASE("validate rejects a perturbed cocycle") {
  REQUIRE(run("gen class3 3 --class 1 --mesh " + at("c.json") + " --out " + at("cd.json")) == 0);
  REQUIRE(run("validate --mesh " + at("c.json") + " --data " + at("cd.json")) == 0);
  json data = read_json_file(at("cd.json"));
  REQUIRE(!data["triangles"].empty());
  auto& fn = data["triangles"].begin().value();
  for (auto& [key, m] : fn.items()) {
    const double re = m[0][0][0], im = m[0][0][1];
    const double t = 0.01;
    m[0][0] = {re * std::cos(t) - im * std::sin(t), re * std::sin(t) + im * std::cos(t)};
  }
  write_json_file(at("cd_bad.json"), data);
  CHECK(run("validate --mesh " + at("c.json") + " --data " + at("cd_bad.json")) == 1);
  CHECK(last_stdout()["status"] == "FAIL");
}

TEST_CASE("holonomy of a global curving") {
  REQUIRE(run("gen trivial-curving 8 8 --total 0.25 --mesh " + at("tc.json") + " --out " + at("tcd.json")) == 0);
  REQUIRE(run("holonomy --mesh " + at("tc.json") + " --data " + at("tcd.json")) == 0);
  const json j = last_stdout();
  const Mat value = matrix_from_json(j["value"], "value");
  CHECK(std::abs(value(0, 0) - cplx(0, 1)) < 1e-9);
}

TEST_CASE("characteristic class on the 3-torus") {
  REQUIRE(run("gen class3 3 --class -2 --mesh " + at("k.json") + " --out " + at("kd.json")) == 0);
  REQUIRE(run("charclass --mesh " + at("k.json") + " --data " + at("kd.json")) == 0);
  CHECK(last_stdout()["integral_over_2pi"].get<double>() == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("lift reproduces the generated monopole gerbe") {
  REQUIRE(run("gen monopole-quotient 1 --charge 1 --twisted --mesh " + at("q.json") + " --out " + at("qd.json")) == 0);
  REQUIRE(run("lift --mesh " + at("q.json") + " --data " + at("qd.json") + " --out " + at("ql.json")) == 0);
  REQUIRE(run("gen monopole 1 --charge 1 --twisted --mesh " + at("q2.json") + " --out " + at("qg.json")) == 0);
  CHECK(read_json_file(at("ql.json")) == read_json_file(at("qg.json")));
}

TEST_CASE("exit codes for bad input") {
  CHECK(run("validate --mesh " + at("t44.json")) == 2);
  CHECK(run("holonomy --mesh " + at("t44.json") + " --data " + at("t44.json")) == 2);
  CHECK(run("frobnicate") == 2);
  // Surface data on a 3-manifold mesh is a library error.
  CHECK(run("holonomy --mesh " + at("c.json") + " --data " + at("cd.json")) == 1);
}
