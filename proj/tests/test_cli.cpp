#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "cli_runner.hpp"

using Json = nlohmann::json;
using testsupport::CliResult;
using testsupport::data_file;
using testsupport::run_cli;

namespace {

bool contains(const std::string& s, const std::string& sub) {
  return s.find(sub) != std::string::npos;
}

int line_count(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validate accepts a well formed measure") {
  CliResult r = run_cli("validate --measure " + data_file("m1.json"));
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["valid"] == true);
  CHECK(j["violations"].empty());
}

TEST_CASE("validate flags a finite mass measure and exits 2") {
  CliResult r = run_cli("validate --measure " + data_file("single_atom.json"));
  CHECK(r.exit_code == 2);
  Json j = Json::parse(r.out);
  CHECK(j["valid"] == false);
  CHECK(j["violations"].size() >= 1);
}

TEST_CASE("validate without exactly one input exits 2") {
  CliResult r = run_cli("validate", true);
  CHECK(r.exit_code == 2);
}

TEST_CASE("missing spec files exit 2") {
  CliResult r = run_cli("classify --plus /nonexistent.json --minus " +
                            data_file("m1.json") + " --lambda 0",
                        true);
  CHECK(r.exit_code == 2);
  CHECK(!r.out.empty());
}

TEST_CASE("classify reports a double eigenvalue at a shared lattice atom") {
  const std::string cmd = "classify --plus " + data_file("m1.json") +
                          " --minus " + data_file("m2.json") +
                          " --lambda 0 --kmax 16";
  CliResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["case"] == "ap-ap");
  CHECK(j["is_eigenvalue"] == true);
  CHECK(j["geometric"] == 1);
  CHECK(j["algebraic"]["kind"] == "finite");
  CHECK(j["algebraic"]["value"] == 2);
  CHECK(j["ambiguous"] == false);

  CliResult again = run_cli(cmd);
  CHECK(again.exit_code == 0);
  CHECK(again.out == r.out);

  // the TOML form of the same spec produces byte-identical output
  CliResult toml = run_cli("classify --plus " + data_file("m1.json") +
                           " --minus " + data_file("m2.toml") +
                           " --lambda 0 --kmax 16");
  CHECK(toml.exit_code == 0);
  CHECK(toml.out == r.out);
}

TEST_CASE("identical halves exit 3 and announce the degenerate spectrum") {
  CliResult r = run_cli("classify --plus " + data_file("m1.json") +
                            " --minus " + data_file("m1.json") +
                            " --lambda 0.5",
                        true);
  CHECK(r.exit_code == 3);
  CHECK(contains(r.out, "sigma(A)=C"));
  CHECK(contains(r.out, "\"degenerate\": true"));
}

TEST_CASE("a zero test landing near the tolerance exits 4") {
  CliResult r = run_cli("classify --plus " + data_file("m1.json") +
                        " --minus " + data_file("m2.json") +
                        " --lambda 0 --tol 0.001");
  CHECK(r.exit_code == 4);
  Json j = Json::parse(r.out);
  CHECK(j["ambiguous"] == true);
}

TEST_CASE("mfun reproduces the free half line coefficient") {
  CliResult r = run_cli("mfun --q " + data_file("free.json") + " --lambda i");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["side"] == "plus");
  REQUIRE(j["results"].size() == 1);
  const double re = j["results"][0]["m"]["re"].get<double>();
  const double im = j["results"][0]["m"]["im"].get<double>();
  const double root_half = std::sqrt(0.5);
  CHECK(std::hypot(re - root_half, im - root_half) < 1e-8);
  CHECK(j["results"][0]["error"].get<double>() < 1e-8);
}

TEST_CASE("mfun emits CSV grids with one row per point") {
  CliResult r = run_cli("mfun --q " + data_file("free.json") +
                        " --lambda i,2i --format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "re_lambda,im_lambda,re_m,im_m,disk_radius");
  CHECK(line_count(r.out) == 3);
}

TEST_CASE("numeric failures exit 5") {
  CliResult r = run_cli("mfun --q " + data_file("free.json") +
                            " --lambda=1+1e-8i --xmax 2 --target 1e-12",
                        true);
  CHECK(r.exit_code == 5);
  CHECK(!r.out.empty());
}

TEST_CASE("infzone identity check certifies the algebraic relation") {
  CliResult r =
      run_cli("infzone --spec " + data_file("onegap.json") + " --identity-check");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["identity_residual"].get<double>() < 1e-10);
  CHECK(j["identity_levels"].size() == 3);
}

TEST_CASE("infzone evaluates the zone functions at a gap point") {
  CliResult r = run_cli("infzone --spec " + data_file("onegap.json") +
                        " --lambda=-1 --side plus");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["zone_values"]["g"]["re"].get<double>() == doctest::Approx(2.5));
  CHECK(j["zone_values"]["f"]["re"].get<double>() == doctest::Approx(-6.0));
  CHECK(j["zone_values"]["k"]["re"].get<double>() ==
        doctest::Approx(std::sqrt(0.375)));
  CHECK(j["zone_values"]["h"]["re"].get<double>() == doctest::Approx(-2.25));
  CHECK(j["m"]["re"].get<double>() == doctest::Approx(0.816496580927726));
  CHECK(std::abs(j["m"]["im"].get<double>()) < 1e-10);
}

TEST_CASE("infzone density grids stay on the bands") {
  CliResult r = run_cli("infzone --spec " + data_file("onegap.json") +
                        " --side plus --format csv --window 0.1 0.9 --grid 8");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,density");
  CHECK(line_count(r.out) == 9);
}

TEST_CASE("spectrum reports bands and gap eigenvalues for a zone spec") {
  const std::string cmd =
      "spectrum --zone " + data_file("onegap.json") + " --region 1.05 1.95";
  CliResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["degenerate"] == false);
  REQUIRE(j["essential"].size() == 2);
  CHECK(j["essential"][0]["lo"].get<double>() == doctest::Approx(0.0));
  CHECK(j["essential"][0]["hi"].get<double>() == doctest::Approx(1.0));
  CHECK(j["essential"][1]["hi"] == "inf");
  for (const Json& d : j["discrete"]) {
    CHECK(std::abs(d["lambda"]["im"].get<double>()) < 1e-9);
    CHECK(d["lambda"]["re"].get<double>() > 1.05);
    CHECK(d["lambda"]["re"].get<double>() < 1.95);
  }

  CliResult again = run_cli(cmd);
  CHECK(again.out == r.out);
}

TEST_CASE("spectrum grids are deterministic across thread counts") {
  const std::string base = "spectrum --zone " + data_file("onegap.json") +
                           " --region 1.1 1.9 --format csv --grid 16";
  CliResult one = run_cli(base + " --threads 1");
  CliResult four = run_cli(base + " --threads 4");
  REQUIRE(one.exit_code == 0);
  REQUIRE(four.exit_code == 0);
  CHECK(one.out == four.out);
  std::istringstream lines(one.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "re_lambda,im_lambda,re_phi,im_phi");
  CHECK(line_count(one.out) == 17);
}

TEST_CASE("critical verdict for the borderline power weight") {
  CliResult r = run_cli("critical --weight " + data_file("alpha15.json"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["zero_is_eigenvalue"] == true);
  CHECK(j["eigenvector_neutral"] == true);
  CHECK(j["zero_simple"] == true);
  CHECK(j["singular_critical_point"] == true);
  CHECK(!j["evidence"].empty());
}

TEST_CASE("precision mode env var is validated") {
  CliResult ok = run_cli("validate --measure " + data_file("m1.json"), false,
                         "INDEFSPEC_PRECISION=extended");
  CHECK(ok.exit_code == 0);
  CliResult bad = run_cli("validate --measure " + data_file("m1.json"), true,
                          "INDEFSPEC_PRECISION=bogus");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.out, "INDEFSPEC_PRECISION"));
}

TEST_CASE("--out writes the same bytes to a file") {
  const std::string path = "/tmp/indefspec_cli_out_test.json";
  std::remove(path.c_str());
  CliResult direct = run_cli("critical --weight " + data_file("alpha15.json"));
  REQUIRE(direct.exit_code == 0);
  CliResult filed = run_cli("critical --weight " + data_file("alpha15.json") +
                            " --out " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == direct.out);
  std::remove(path.c_str());
}

TEST_SUITE_END();
