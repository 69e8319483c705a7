#include "doctest.h"
#include "uniprobe/serialize.hpp"

#include <string>

using namespace uniprobe;

namespace {

std::string message_of(const std::string& text) {
  try {
    ensemble_from_json(parse_json_text(text, "in.json"), "in.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("rounding to nine significant digits") {
  CHECK(round9(0.123456789123) == 0.123456789);
  CHECK(round9(1234567891234.0) == 1234567890000.0);
  CHECK(round9(0.0) == 0.0);
  CHECK(Json(round9(0.96049178012)).dump() == "0.96049178");
}

TEST_CASE("ensemble round trip") {
  Rng rng(1);
  const UnitaryEnsemble e({haar_unitary(3, rng), haar_unitary(3, rng)}, {0.25, 0.75});
  const Json j = to_json(e);
  CHECK(j["dim"] == 3);
  CHECK(j["unitaries"][0]["entries"].size() == 9);
  // Nine digits are not enough for the 1e-10 unitarity check, so re-read
  // from a full-precision copy.
  Json full = j;
  for (std::size_t x = 0; x < 2; ++x) {
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < 3; ++r)
      for (Eigen::Index c = 0; c < 3; ++c)
        entries.push_back({e[x].matrix()(r, c).real(), e[x].matrix()(r, c).imag()});
    full["unitaries"][x]["entries"] = entries;
  }
  const UnitaryEnsemble back = ensemble_from_json(full);
  CHECK(back.priors()[1] == 0.75);
  CHECK(max_abs(back[1].matrix() - e[1].matrix()) == 0.0);
}

TEST_CASE("defaults and real-number entries") {
  const Json j = parse_json_text(R"({"dim": 2, "unitaries": [
      {"rows": 2, "cols": 2, "entries": [1, 0, 0, 1]},
      {"rows": 2, "cols": 2, "entries": [0, 1, 1, 0]}]})", "x");
  const UnitaryEnsemble e = ensemble_from_json(j);
  CHECK(e.priors()[0] == 0.5);
  CHECK(e[1].matrix()(0, 1) == Complex(1.0));
}

TEST_CASE("probe round trip and class inference") {
  const ProbeSpec p = probe_w_family(3);
  const Json j = to_json(p);
  CHECK(j["class"] == "arbitrary");
  CHECK(probe_from_json(j).tag() == ProbeClass::arbitraryPure);
  Json untagged = to_json(probe_max_entangled(2));
  untagged.erase("class");
  CHECK(probe_from_json(untagged).tag() == ProbeClass::maxEntangled);
  Json wrong = to_json(probe_max_entangled(2));
  wrong["class"] = "product";
  CHECK_THROWS_AS(probe_from_json(wrong), InputError);
}

TEST_CASE("diagnostics name the offending field or position") {
  CHECK(message_of("{\"dim\": 2,\n  \"unitaries\": [\n  {\"rows\": 2,, }]}").find("in.json:3:") == 0);
  CHECK(message_of(R"({"unitaries": []})").find("missing field \"dim\"") != std::string::npos);
  CHECK(message_of(R"({"dim": 2, "unitaries": [{"rows": 2, "cols": 2, "entries": [1, 0, 0]}]})")
            .find("in.json.unitaries[0].entries") != std::string::npos);
  CHECK(message_of(R"({"dim": 2, "unitaries": [{"rows": 2, "cols": 2, "entries": [1, 0, 0, "a"]}]})")
            .find("entries[3]") != std::string::npos);
  CHECK(message_of(R"({"dim": 2, "unitaries": [{"rows": 2, "cols": 2, "entries": [1, 1, 0, 1]}]})")
            .find("unitaries[0]") != std::string::npos);
  CHECK(message_of(R"({"dim": 2, "priors": [0.9], "unitaries": [{"rows": 2, "cols": 2, "entries": [1, 0, 0, 1]}]})")
            .find("priors") != std::string::npos);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("reports carry the type's field names") {
  const UnitaryEnsemble s = swapped_pair(3);
  const Json j = to_json(pair_report(s[0], s[1]));
  for (const char* k : {"dProduct", "dMaxEnt", "hull", "traceOverD", "nmeAdvantage"})
    CHECK(j.contains(k));
  CHECK(j["dMaxEnt"] == 0.971404521);
  TableRow r;
  r.d = 3;
  r.dME = {0.96049178012, 9e-10};
  const Json t = to_json(r);
  CHECK(t["dME"]["value"] == 0.96049178);
  CHECK(t["dME"]["gap"] == 9e-10);
}
