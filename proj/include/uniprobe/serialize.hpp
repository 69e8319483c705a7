#pragma once

// JSON encoding of the library's value types.
//
//   matrix    {"rows": r, "cols": c, "entries": [[re, im], ...]}  row-major
//   ensemble  {"dim": d, "priors": [...], "unitaries": [matrix, ...]}
//   probe     {"dimA": d, "dimB": d, "amplitudes": [[re, im], ...],
//              "class": "product" | "maxent" | "arbitrary"}
//
// "priors" may be omitted (uniform) and "class" may be omitted (inferred from
// the Schmidt coefficients). Parse failures throw InputError with the field
// path, and the line and column for syntax errors.

#include "json.hpp"

#include <string>
#include <string_view>

#include "uniprobe/discrimination.hpp"
#include "uniprobe/error.hpp"
#include "uniprobe/families.hpp"
#include "uniprobe/pairwise.hpp"
#include "uniprobe/probeopt.hpp"

namespace uniprobe {

using Json = nlohmann::json;

class InputError : public Error {
 public:
  using Error::Error;
};

/// Rounds to 9 significant digits, the precision of every JSON emission.
double round9(double v);

Json to_json(const ComplexMatrix& m);
Json to_json(const ComplexVector& v);
Json to_json(const UnitaryEnsemble& e);
Json to_json(const ProbeSpec& p);
Json to_json(const Povm& m);
/// value, dual_gap, iterations, converged, povm.
Json to_json(const DiscriminationOutcome& o);
Json to_json(const HullResult& h);
Json to_json(const PairReport& r);
Json to_json(const TableRow& r);

/// Each parser names offending fields by their path below `where`.
ComplexMatrix matrix_from_json(const Json& j, const std::string& where = "$");
UnitaryEnsemble ensemble_from_json(const Json& j, const std::string& where = "$");
ProbeSpec probe_from_json(const Json& j, const std::string& where = "$");

/// Parses JSON text; `source` names the input in messages.
Json parse_json_text(std::string_view text, const std::string& source);
Json read_json_file(const std::string& path);

UnitaryEnsemble load_ensemble(const std::string& path);
ProbeSpec load_probe(const std::string& path);

}  // namespace uniprobe
