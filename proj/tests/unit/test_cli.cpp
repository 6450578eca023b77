#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "k3cli/cli.hpp"

using namespace k3;
using cli::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = cli::run_command(args, o, e);
  return {c, o.str(), e.str()};
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("k3cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("report command") {
  Run r = run({"k3", "report", "1", "0", "3", "--json"});
  REQUIRE(r.code == 0);
  json j = r.j();
  CHECK(j["schema_version"] == cli::kSchemaVersion);
  CHECK(j["result"]["base_change_involution"]["verdict"] == "exception");
  CHECK(j["result"]["base_change_involution"].contains("paper_anchor"));
  CHECK(j["result"]["enriques_admissible"].contains("paper_anchor"));
  CHECK(j["result"]["enriques_ns_over"]["conjectural"] == true);
  CHECK(!j["provenance"]["anchors"].empty());
}

TEST_CASE("exit codes") {
  Run a = run({"bqf", "classgroup", "-23"});
  CHECK(a.code == 0);
  CHECK(a.out.find("class_number: 3") != std::string::npos);
  CHECK(run({"bqf", "classgroup", "5"}).code == 1);
  CHECK(run({"bqf", "classgroup", "abc"}).code == 2);
  CHECK(run({"bqf", "frobnicate"}).code == 2);
  CHECK(run({"bqf", "classgroup", "-23", "--bogus"}).code == 2);
  Run none = run({});
  CHECK(none.code == 2);
  CHECK(none.err.find("subcommands") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("JSON output round-trips and is deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"k3", "report", "2", "1", "3", "--json"},
           {"bqf", "classgroup", "-84", "--json"},
           {"ellsurf", "fibers", "--a1", "t-2", "--a2", "-t", "--a3", "-t*(t-1)", "--json"},
           {"lattice", "discform", "A1 + A5", "--json"}}) {
    Run a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.j().dump(2) + "\n" == a.out);
  }
}

TEST_CASE("precision from the environment") {
  ::setenv("K3TOOL_BITS", "160", 1);
  CHECK(cli::default_bits() == 160);
  Run r = run({"k3", "inose", "1", "0", "3", "--json"});
  CHECK(r.j()["result"]["bits"] == 160);
  ::unsetenv("K3TOOL_BITS");
  CHECK(cli::default_bits() == 256);
  CHECK(run({"k3", "classpoly", "-23", "--bits", "32"}).code == 2);
}

TEST_CASE("model emission feeds the fibre survey") {
  fs::path dir = scratch_dir("model");
  std::string file = (dir / "x.json").string();
  Run a = run({"k3", "inose", "1", "0", "3", "--emit-model", file});
  REQUIRE(a.code == 0);
  Run b = run({"ellsurf", "fibers", file, "--json"});
  REQUIRE(b.code == 0);
  json s = b.j()["result"]["survey"];
  CHECK(s["euler_sum"] == 24);
  int ii = 0, i2 = 0;
  for (const auto& f : s["fibers"]) {
    ii += f["type"] == "II*";
    i2 += f["type"] == "I2";
  }
  CHECK(ii == 2);
  CHECK(i2 == 1);
  CHECK(run({"k3", "inose", "2", "1", "3", "--emit-model", file}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("model JSON round trip") {
  ellsurf::WeierstrassModel w(-3, Poly(-3), Poly::variable(-3), Poly(-3),
                              Poly::constant(FieldElement(Rat(1, 3), Rat(2), -3), -3), Poly::constant(FieldElement(1), -3));
  auto back = cli::model_from_json(cli::model_json(w));
  CHECK(back.coeffs() == w.coeffs());
  CHECK(back.field() == -3);
  CHECK_THROWS_AS(cli::model_from_json(json{{"a", json::array()}}), UsageError);
}

TEST_CASE("lattice commands") {
  Run a = run({"lattice", "discform", "D4(-1)", "--values", "--json"});
  REQUIRE(a.code == 0);
  CHECK(a.j()["result"]["discriminant_form"]["nonzero_values"] == json{{"1", 3}});
  fs::path dir = scratch_dir("gram");
  std::ofstream((dir / "g.json").string()) << "[[2,0],[0,6]]";
  Run b = run({"lattice", "iso", (dir / "g.json").string(), "Q(2,2,2)", "--json"});
  REQUIRE(b.code == 0);
  CHECK(b.j()["result"]["isomorphic"] == false);
  Run t = run({"lattice", "t-from-ns", "--disc", "-3", "--target", (dir / "g.json").string(), "--json"});
  CHECK(t.code == 0);
  CHECK(t.j()["result"]["forms"].empty());
  CHECK(run({"lattice", "t-from-ns", "--target", "Q(1,1,1)"}).code == 2);
  std::ofstream((dir / "odd.json").string()) << "[[1,0],[0,6]]";
  CHECK(run({"lattice", "discform", (dir / "odd.json").string()}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("ellsurf commands") {
  Run a = run({"ellsurf", "basechange", "--a1", "t-2", "--a2", "-t", "--a3", "-t*(t-1)", "--subst", "-8*s^2/(s^2-1)", "--json"});
  REQUIRE(a.code == 0);
  CHECK(a.j()["result"]["survey"]["euler_sum"] == 24);
  Run b = run({"ellsurf", "twist", "--a4", "-6*t^4", "--a6", "t^5*(t^2-6*t+1)", "--gamma", "5", "--json"});
  REQUIRE(b.code == 0);
  CHECK(b.j()["result"]["survey"]["configuration"] == "II*@0, II*@inf, 4*I1");
  Run c = run({"ellsurf", "shioda-tate", "--fibers", "3I6,3I2", "--torsion", "12", "--json"});
  CHECK(c.j()["result"]["rho"] == 20);
  CHECK(run({"ellsurf", "fibers", "--a4", "0", "--a6", "0"}).code == 1);
  CHECK(run({"ellsurf", "fibers", "--a4", "t+"}).code == 2);
}

TEST_CASE("fixture runner") {
  cli::FixtureSummary s = cli::run_fixtures(K3_TEST_FIXTURES, std::nullopt);
  CHECK(s.outcomes.size() > 20);
  CHECK(s.failed() == 0);

  fs::path dir = scratch_dir("fixtures");
  for (const auto& e : fs::directory_iterator(K3_TEST_FIXTURES)) fs::copy(e.path(), dir / e.path().filename());
  json doc;
  std::ifstream((dir / "bqf.json").string()) >> doc;
  doc[0]["expect"]["/result/class_number"] = 4;
  std::ofstream((dir / "bqf.json").string()) << doc.dump(2);
  Run r = run({"fixtures", "--fixtures", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL classgroup_d23") != std::string::npos);
  CHECK(run({"fixtures", "--fixtures", dir.string(), "--filter", "inose"}).code == 0);
  CHECK(run({"fixtures", "--fixtures", dir.string(), "--filter", ""}).code == 2);
  CHECK(run({"fixtures", "--fixtures", dir.string(), "--filter", "nothing-matches"}).code == 2);
  CHECK(run({"fixtures", "--fixtures", (dir / "missing").string()}).code == 1);
  fs::remove_all(dir);
}
