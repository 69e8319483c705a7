#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uniprobe/discrimination.hpp"
#include "uniprobe/error.hpp"
#include "uniprobe/families.hpp"
#include "uniprobe/hullgeom.hpp"
#include "uniprobe/pairwise.hpp"
#include "uniprobe/probeopt.hpp"
#include "uniprobe/verify.hpp"

namespace py = pybind11;
using namespace uniprobe;

namespace {

UnitaryEnsemble make_ensemble(const std::vector<ComplexMatrix>& us,
                              std::optional<std::vector<double>> priors) {
  std::vector<UnitaryOperator> ops(us.begin(), us.end());
  if (!priors) return UnitaryEnsemble::uniform(std::move(ops));
  return UnitaryEnsemble(std::move(ops), *priors);
}

std::vector<ComplexMatrix> matrices(const UnitaryEnsemble& e) {
  std::vector<ComplexMatrix> out;
  for (const auto& u : e.unitaries()) out.push_back(u.matrix());
  return out;
}

ProbeSpec make_probe(const ComplexVector& amps, int dimA, int dimB) {
  return ProbeSpec::classify(PureState(dimA, dimB, amps, 1e-8));
}

py::dict outcome_dict(const DiscriminationOutcome& o) {
  py::dict d;
  d["value"] = o.successProb;
  d["dual_gap"] = o.dualGap;
  d["iterations"] = o.iterations;
  d["converged"] = o.converged;
  d["povm"] = o.povm.elements();
  return d;
}

py::dict hull_dict(const HullResult& h) {
  py::dict d;
  d["min_norm"] = h.minNorm;
  d["weights"] = h.weights;
  d["witness"] = h.witness;
  return d;
}

py::dict cell_dict(const TableCell& c) {
  py::dict d;
  d["value"] = c.value;
  d["gap"] = c.gap;
  return d;
}

py::list rows_list(const std::vector<TableRow>& rows) {
  py::list out;
  for (const auto& r : rows) {
    py::dict d;
    d["d"] = r.d;
    d["dP"] = cell_dict(r.dP);
    d["dNME"] = cell_dict(r.dNME);
    d["dME"] = cell_dict(r.dME);
    if (r.dArbitrary) d["dArbitrary"] = cell_dict(*r.dArbitrary);
    out.append(d);
  }
  return out;
}

SeesawConfig seesaw(int restarts, std::uint64_t seed) {
  SeesawConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-shot discrimination of unitary channels";
  py::register_exception<Error>(m, "UniprobeError", PyExc_ValueError);

  m.def("d_product", [](const ComplexMatrix& u1, const ComplexMatrix& u2) {
    return d_product(UnitaryOperator(u1), UnitaryOperator(u2));
  });
  m.def("d_maxent", [](const ComplexMatrix& u1, const ComplexMatrix& u2) {
    return d_maxent(UnitaryOperator(u1), UnitaryOperator(u2));
  });
  m.def("d_with_probe", [](const ComplexMatrix& u1, const ComplexMatrix& u2,
                           const ComplexVector& probe, int dimB) {
    const int d = static_cast<int>(u1.rows());
    return d_with_probe(UnitaryOperator(u1), UnitaryOperator(u2), PureState(d, dimB, probe, 1e-8));
  });
  m.def("optimal_entangled_probe", [](const ComplexMatrix& u1, const ComplexMatrix& u2) {
    return optimal_entangled_probe(UnitaryOperator(u1), UnitaryOperator(u2)).amplitudes();
  });
  m.def("pair_report", [](const ComplexMatrix& u1, const ComplexMatrix& u2) {
    const PairReport r = pair_report(UnitaryOperator(u1), UnitaryOperator(u2));
    py::dict d;
    d["dP"] = r.dProduct;
    d["dME"] = r.dMaxEnt;
    d["hull"] = hull_dict(r.hull);
    d["trace_over_d"] = r.traceOverD;
    d["nme_advantage"] = r.nmeAdvantage;
    return d;
  });
  m.def("min_hull_norm", [](const std::vector<Complex>& points) {
    return hull_dict(min_hull_norm(PhasePointSet(points)));
  });

  m.def("discriminate", [](const std::vector<ComplexMatrix>& states,
                           const std::vector<double>& priors, double tol) {
    std::vector<DensityOperator> rho;
    for (const auto& s : states) rho.emplace_back(s, 1e-8);
    return outcome_dict(discriminate_optimal(StateEnsemble(std::move(rho), priors), tol));
  }, py::arg("states"), py::arg("priors"), py::arg("tol") = kDefaultSolverTol);

  m.def("evaluate", [](const std::vector<ComplexMatrix>& us, const ComplexVector& probe,
                       int dimA, int dimB, std::optional<std::vector<double>> priors) {
    return outcome_dict(evaluate(make_ensemble(us, priors), make_probe(probe, dimA, dimB)));
  }, py::arg("unitaries"), py::arg("probe"), py::arg("dimA"), py::arg("dimB"),
     py::arg("priors") = py::none());

  m.def("optimize", [](const std::vector<ComplexMatrix>& us, const std::string& cls,
                       int restarts, std::uint64_t seed, std::optional<std::vector<double>> priors) {
    const ProbeOptResult r = optimize(make_ensemble(us, priors), parse_probe_class(cls),
                                      seesaw(restarts, seed));
    py::dict d = outcome_dict(r.outcome);
    d["value"] = r.value;
    d["probe"] = r.probe.state().amplitudes();
    d["class"] = std::string(to_string(r.probe.tag()));
    d["restart_values"] = r.restartValues;
    d["monotone"] = r.monotone;
    return d;
  }, py::arg("unitaries"), py::arg("probe_class"), py::arg("restarts") = 20,
     py::arg("seed") = 1, py::arg("priors") = py::none());

  m.def("table_v", [](const std::vector<int>& dims, int restarts, std::uint64_t seed) {
    return rows_list(table_v(dims, seesaw(restarts, seed)));
  }, py::arg("dims"), py::arg("restarts") = 20, py::arg("seed") = 1);
  m.def("table_w", [](const std::vector<int>& dims, int restarts, std::uint64_t seed) {
    return rows_list(table_w(dims, seesaw(restarts, seed)));
  }, py::arg("dims"), py::arg("restarts") = 20, py::arg("seed") = 1);

  m.def("v_family", [](int d) { return matrices(v_family(d)); });
  m.def("w_family", [](int d) { return matrices(w_family(d)); });
  m.def("swapped_pair", [](int d) { return matrices(swapped_pair(d)); });
  m.def("t_trio", [] {
    const auto [a, b] = t_trio();
    return std::make_pair(matrices(a), matrices(b));
  });
  m.def("probe_v_family", [](int d) { return probe_v_family(d).state().amplitudes(); });
  m.def("probe_w_family", [](int d) { return probe_w_family(d).state().amplitudes(); });
  m.def("probe_max_entangled", [](int d) { return probe_max_entangled(d).state().amplitudes(); });

  m.def("run_checks", [](const std::vector<std::string>& only, std::uint64_t seed) {
    py::list out;
    for (const CheckResult& c : run_checks(only, seed)) {
      py::dict d;
      d["group"] = c.group;
      d["name"] = c.name;
      d["passed"] = c.passed;
      d["residual"] = c.residual;
      d["threshold"] = c.threshold;
      d["advisory"] = c.advisory;
      d["detail"] = c.detail;
      out.append(d);
    }
    return out;
  }, py::arg("only") = std::vector<std::string>{}, py::arg("seed") = 1);
}
