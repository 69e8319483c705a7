#include "uniprobe/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uniprobe {

double round9(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

namespace {

Json complex_pair(Complex z) {
  return Json::array({round9(z.real()), round9(z.imag())});
}

Json real_list(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(round9(x));
  return out;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 1 ||
      v.get<long long>() > 4096) {
    fail(where + "." + key, "expected a positive integer");
  }
  return v.get<int>();
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

Complex complex_from(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) {
    fail(where, "expected [re, im] or a real number");
  }
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

const Json& array_field(const Json& j, const char* key, const std::string& where,
                        std::size_t expected) {
  const Json& v = field(j, key, where);
  if (!v.is_array()) fail(where + "." + key, "expected an array");
  if (expected && v.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " entries, found " << v.size();
    fail(where + "." + key, os.str());
  }
  return v;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back(complex_pair(m(r, c)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json to_json(const ComplexVector& v) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(complex_pair(v(i)));
  return {{"len", v.size()}, {"entries", entries}};
}

Json to_json(const UnitaryEnsemble& e) {
  Json us = Json::array();
  for (const auto& u : e.unitaries()) us.push_back(to_json(u.matrix()));
  return {{"dim", e.dim()}, {"priors", real_list(e.priors())}, {"unitaries", us}};
}

Json to_json(const ProbeSpec& p) {
  Json amps = Json::array();
  const auto& a = p.state().amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) amps.push_back(complex_pair(a(i)));
  return {{"dimA", p.state().dimA()},
          {"dimB", p.state().dimB()},
          {"amplitudes", amps},
          {"class", std::string(to_string(p.tag()))},
          {"schmidt", real_list(p.schmidt().coefficients)}};
}

Json to_json(const Povm& m) {
  Json out = Json::array();
  for (const auto& el : m.elements()) out.push_back(to_json(el));
  return out;
}

Json to_json(const DiscriminationOutcome& o) {
  return {{"value", round9(o.successProb)},
          {"dual_gap", round9(o.dualGap)},
          {"iterations", o.iterations},
          {"converged", o.converged},
          {"povm", to_json(o.povm)}};
}

Json to_json(const HullResult& h) {
  return {{"minNorm", round9(h.minNorm)},
          {"weights", real_list(h.weights)},
          {"witness", complex_pair(h.witness)}};
}

Json to_json(const PairReport& r) {
  return {{"dProduct", round9(r.dProduct)},
          {"dMaxEnt", round9(r.dMaxEnt)},
          {"hull", to_json(r.hull)},
          {"traceOverD", complex_pair(r.traceOverD)},
          {"nmeAdvantage", r.nmeAdvantage}};
}

Json to_json(const TableRow& r) {
  auto cell = [](const TableCell& c) {
    return Json{{"value", round9(c.value)}, {"gap", round9(c.gap)}};
  };
  Json out = {{"d", r.d}, {"dP", cell(r.dP)}, {"dNME", cell(r.dNME)},
              {"dME", cell(r.dME)}};
  if (r.dArbitrary) out["dArbitrary"] = cell(*r.dArbitrary);
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  const int rows = int_field(j, "rows", where);
  const int cols = int_field(j, "cols", where);
  const Json& entries =
      array_field(j, "entries", where, static_cast<std::size_t>(rows) * cols);
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t k = static_cast<std::size_t>(r) * cols + c;
      m(r, c) = complex_from(entries[k],
                             where + ".entries[" + std::to_string(k) + "]");
    }
  }
  return m;
}

UnitaryEnsemble ensemble_from_json(const Json& j, const std::string& where) {
  const int dim = int_field(j, "dim", where);
  const Json& us = array_field(j, "unitaries", where, 0);
  if (us.empty()) fail(where + ".unitaries", "empty list");
  std::vector<UnitaryOperator> ops;
  for (std::size_t x = 0; x < us.size(); ++x) {
    const std::string at = where + ".unitaries[" + std::to_string(x) + "]";
    ComplexMatrix m = matrix_from_json(us[x], at);
    if (m.rows() != dim || m.cols() != dim) {
      fail(at, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                   " matrix");
    }
    try {
      ops.emplace_back(std::move(m));
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }
  std::vector<double> priors(ops.size(), 1.0 / ops.size());
  if (j.contains("priors")) {
    const Json& p = array_field(j, "priors", where, ops.size());
    for (std::size_t x = 0; x < p.size(); ++x)
      priors[x] = number(p[x], where + ".priors[" + std::to_string(x) + "]");
  }
  try {
    return UnitaryEnsemble(std::move(ops), std::move(priors));
  } catch (const Error& e) {
    fail(where + ".priors", e.what());
  }
}

ProbeSpec probe_from_json(const Json& j, const std::string& where) {
  const int dimA = int_field(j, "dimA", where);
  const int dimB = int_field(j, "dimB", where);
  const Json& amps = array_field(j, "amplitudes", where,
                                 static_cast<std::size_t>(dimA) * dimB);
  ComplexVector v(dimA * dimB);
  for (std::size_t k = 0; k < amps.size(); ++k)
    v(static_cast<Eigen::Index>(k)) =
        complex_from(amps[k], where + ".amplitudes[" + std::to_string(k) + "]");
  // Serialized amplitudes carry nine digits; accept that and renormalize.
  if (std::abs(v.norm() - 1.0) <= 1e-8) v.normalize();
  try {
    PureState state(dimA, dimB, std::move(v), 1e-8);
    if (!j.contains("class")) return ProbeSpec::classify(std::move(state));
    const Json& c = j["class"];
    if (!c.is_string()) fail(where + ".class", "expected a string");
    return ProbeSpec(std::move(state), parse_probe_class(c.get<std::string>()));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

Json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": malformed JSON ("
       << e.what() << ")";
    throw InputError(os.str());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

UnitaryEnsemble load_ensemble(const std::string& path) {
  return ensemble_from_json(read_json_file(path), path);
}

ProbeSpec load_probe(const std::string& path) {
  return probe_from_json(read_json_file(path), path);
}

}  // namespace uniprobe
