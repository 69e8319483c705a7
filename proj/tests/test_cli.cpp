#include "doctest.h"
#include "cli.hpp"
#include "uniprobe/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace uniprobe;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "uniprobe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string(P_tmpdir) + "/uniprobe_test_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("pairwise on the swapped pair") {
  const Run r = run({"pairwise", "--builtin", "swapped:3"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["dProduct"] == 1.0);
  CHECK(j["dMaxEnt"].get<double>() == doctest::Approx(0.9714).epsilon(1e-4));
  CHECK(j["nmeAdvantage"] == true);
  CHECK(j["r2"].get<double>() == doctest::Approx(1.0 / 3).epsilon(1e-8));
}

TEST_CASE("pairwise on the first diagonal qutrit set") {
  const Json j = Json::parse(run({"pairwise", "--builtin", "ttrio"}).out);
  CHECK(j["dProduct"] == 1.0);
  // Tr(T1^dagger T2) = 0, so the maximally entangled probe is perfect as well.
  CHECK(j["dMaxEnt"] == 1.0);
}

TEST_CASE("pairwise on an identical pair from a file") {
  const std::string path = temp_file("same.json", R"({"dim": 2, "unitaries": [
    {"rows": 2, "cols": 2, "entries": [1, 0, 0, 1]},
    {"rows": 2, "cols": 2, "entries": [1, 0, 0, 1]}]})");
  const Json j = Json::parse(run({"pairwise", "--input", path}).out);
  CHECK(j["dProduct"] == 0.5);
  CHECK(j["dMaxEnt"] == 0.5);
}

TEST_CASE("input errors exit with 2") {
  Run r = run({"pairwise", "--builtin", "v:3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("exactly 2 unitaries") != std::string::npos);
  CHECK(run({"pairwise"}).code == 2);
  CHECK(run({"pairwise", "--builtin", "nope:3"}).code == 2);
  CHECK(run({"tables", "--family", "v", "--d", "2..3"}).code == 2);
  CHECK(run({"tables", "--family", "w", "--d", "3..7"}).code == 2);
  CHECK(run({"tables", "--d", "x"}).code == 2);
  CHECK(run({"verify", "--only", "nonsense"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const std::string bad = temp_file("bad.json", "{\"dim\": 2,\n \"unitaries\": [}\n");
  r = run({"ensemble", "--input", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find(":2:") != std::string::npos);
}

TEST_CASE("ensemble command per probe class") {
  Json j = Json::parse(run({"ensemble", "--builtin", "v:3", "--probe-class", "maxent"}).out);
  CHECK(j["value"].get<double>() == doctest::Approx(0.9605).epsilon(1e-3));
  j = Json::parse(run({"ensemble", "--builtin", "w:4", "--probe-class", "product", "--restarts", "3"}).out);
  CHECK(j["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(j["schmidt"].size() == 4);
  j = Json::parse(run({"ensemble", "--builtin", "v:3", "--probe-class", "arbitrary", "--restarts", "3"}).out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  const std::string probe = temp_file("probe.json", to_json(probe_v_family(3)).dump());
  const Run withProbe = run({"ensemble", "--builtin", "v:3", "--probe", probe});
  REQUIRE_MESSAGE(withProbe.code == 0, withProbe.err);
  j = Json::parse(withProbe.out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("tables: a single row, CSV and JSON agree") {
  const Run csv = run({"tables", "--family", "v", "--d", "3..3", "--format", "csv", "--restarts", "2"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out == "d,dP,dNME,dME\n3,1.0000,1.0000,0.9605\n");
  const Json j = Json::parse(run({"tables", "--family", "v", "--d", "3", "--restarts", "2"}).out);
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0]["dME"]["value"] == 0.96049178);
}

TEST_CASE("argand data") {
  const Run r = run({"argand", "--builtin", "swapped:3", "--format", "csv"});
  CHECK(r.out == "kind,x,y\neigenvalue,1,0\neigenvalue,1,0\neigenvalue,-1,0\nr1,0,0\nr2,0.333333333,0\n");
  const Json j = Json::parse(run({"argand", "--builtin", "ttrio"}).out);
  CHECK(j["eigenvalues"].size() == 3);
  CHECK(j["r1"]["norm"].get<double>() < 1e-9);
}

TEST_CASE("simulate is deterministic and consistent") {
  const std::vector<std::string> args = {"simulate", "--builtin", "v:3", "--trials", "20000", "--seed", "9"};
  const Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(std::abs(j["frequency"].get<double>() - 0.9605) <= 4 * j["stderr"].get<double>());
  const Json w = Json::parse(run({"simulate", "--builtin", "w:3", "--probe-class", "arbitrary", "--trials", "500"}).out);
  CHECK(w["frequency"] == 1.0);
  CHECK(w["z"] == 0.0);
  // JSON and CSV carry the same digits.
  const Run c = run({"simulate", "--builtin", "v:3", "--trials", "20000", "--seed", "9", "--format", "csv"});
  std::istringstream lines(c.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(row.rfind(Json(j["analytic"]).dump() + "," + Json(j["frequency"]).dump(), 0) == 0);
}

TEST_CASE("verify subsets and --out") {
  const std::string out = std::string(P_tmpdir) + "/uniprobe_test_verify.json";
  const Run r = run({"verify", "--only", "qubit,hull", "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  const Json j = Json::parse(f);
  CHECK(j["all_passed"] == true);
  for (const auto& c : j["checks"]) CHECK((c["group"] == "qubit" || c["group"] == "hull"));
  const Json t = Json::parse(run({"verify", "--only", "ttrio"}).out);
  bool saw = false;
  for (const auto& c : t["checks"])
    if (c["check"] == "second overlap is 1/3 there") saw = c["passed"].get<bool>();
  CHECK(saw);
}

TEST_CASE("range parsing") {
  CHECK(cli::parse_range("3..7") == std::pair{3, 7});
  CHECK(cli::parse_range("4") == std::pair{4, 4});
  CHECK_THROWS_AS(cli::parse_range("7..3"), InputError);
  CHECK_THROWS_AS(cli::parse_range("3..x"), InputError);
}
