#include "uniprobe/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "uniprobe/discrimination.hpp"
#include "uniprobe/error.hpp"
#include "uniprobe/families.hpp"
#include "uniprobe/hullgeom.hpp"
#include "uniprobe/pairwise.hpp"
#include "uniprobe/probeopt.hpp"

namespace uniprobe {

namespace {

using Results = std::vector<CheckResult>;

void add(Results& out, const std::string& group, std::string name,
         double residual, double threshold, std::string detail = {},
         bool advisory = false) {
  out.push_back({group, std::move(name), residual <= threshold, residual,
                 threshold, advisory, std::move(detail)});
}

double flag(bool ok) { return ok ? 0.0 : 1.0; }

DensityOperator random_pure(int d, Rng& rng) {
  return DensityOperator::from_ket(haar_vector(d, rng));
}

Results check_linalg(Rng& rng) {
  const std::string g = "linalg";
  Results out;
  double unit = 0.0, eig = 0.0, sch = 0.0;
  for (int d = 2; d <= 6; ++d) {
    for (int t = 0; t < 10; ++t) {
      const UnitaryOperator u = haar_unitary(d, rng);
      unit = std::max(unit, identity_deviation(u.matrix().adjoint() * u.matrix()));
      const NormalEigen e = eig_normal(u.matrix());
      ComplexMatrix rec = ComplexMatrix::Zero(d, d);
      for (int j = 0; j < d; ++j)
        rec += e.values[j] * e.vectors.col(j) * e.vectors.col(j).adjoint();
      eig = std::max(eig, max_abs(rec - u.matrix()));
      const PureState s = PureState::normalized(d, d + 1, haar_vector(d * (d + 1), rng));
      sch = std::max(sch, (schmidt(s).reconstruct() - s.amplitudes()).cwiseAbs().maxCoeff());
    }
  }
  add(out, g, "haar unitarity", unit, kStructuralTol);
  add(out, g, "normal eigendecomposition reconstruction", eig, kSpectralTol);
  add(out, g, "Schmidt reconstruction", sch, kSpectralTol);
  return out;
}

Results check_hull(Rng& rng) {
  const std::string g = "hull";
  Results out;
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  double consistency = 0.0, upper = 0.0;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> th(2 + t % 6);
    for (double& a : th) a = angle(rng);
    const PhasePointSet set = PhasePointSet::from_angles(th);
    const HullResult h = min_hull_norm(set);
    Complex w = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < th.size(); ++j) {
      w += h.weights[j] * set.points()[j];
      sum += h.weights[j];
    }
    consistency = std::max({consistency, std::abs(w - h.witness),
                            std::abs(std::abs(w) - h.minNorm), std::abs(sum - 1.0)});
    // No hull point on a segment between input points is closer.
    for (std::size_t a = 0; a < th.size(); ++a)
      for (std::size_t b = 0; b < th.size(); ++b)
        for (int k = 0; k <= 20; ++k) {
          const double s = k / 20.0;
          const double r = std::abs(s * set.points()[a] + (1 - s) * set.points()[b]);
          upper = std::max(upper, h.minNorm - r);
        }
  }
  add(out, g, "witness equals weighted sum", consistency, 1e-12);
  add(out, g, "no sampled hull point beats the minimum", upper, 1e-12);
  const double antipodal = min_hull_norm(PhasePointSet({1.0, -1.0})).minNorm;
  add(out, g, "antipodal pair reaches the origin", antipodal, 1e-12);
  const double quarter =
      std::abs(min_hull_norm(PhasePointSet({1.0, Complex(0, 1)})).minNorm - std::sqrt(0.5));
  add(out, g, "quarter-turn pair distance sqrt(1/2)", quarter, 1e-12);
  return out;
}

Results check_solver(Rng& rng) {
  const std::string g = "solver";
  Results out;
  std::uniform_real_distribution<double> prior(0.1, 0.9);
  double helstrom = 0.0, gap = 0.0, srm = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 3;
    const double p = prior(rng);
    const DensityOperator a = random_pure(d, rng), b = random_pure(d, rng);
    const StateEnsemble e({a, b}, {p, 1 - p});
    const DiscriminationOutcome o = discriminate_optimal(e);
    helstrom = std::max(helstrom, std::abs(o.successProb - helstrom_two(a, b, p, 1 - p)));
    gap = std::max(gap, verify_certificate(e, o.povm).gap);
  }
  for (int t = 0; t < 10; ++t) {
    const int d = 3, n = 4;
    std::vector<DensityOperator> st;
    for (int x = 0; x < n; ++x) st.push_back(random_pure(d, rng));
    const StateEnsemble e = StateEnsemble::uniform(st);
    const DiscriminationOutcome o = discriminate_optimal(e);
    gap = std::max(gap, verify_certificate(e, o.povm).gap);
    srm = std::max(srm, square_root_measurement(e).second - o.successProb);
  }
  add(out, g, "two states match the Helstrom value", helstrom, 1e-6);
  add(out, g, "certificate gap", gap, 1e-6);
  add(out, g, "square-root measurement never beats the optimum", srm, 1e-9);
  return out;
}

Results check_pairs(Rng& rng, std::uint64_t seed) {
  const std::string g = "pair-equivalence";
  Results out;
  double order = -1.0, probe = 0.0, seesaw = 0.0;
  for (int d = 2; d <= 5; ++d) {
    for (int t = 0; t < 50; ++t) {
      const auto u1 = haar_unitary(d, rng), u2 = haar_unitary(d, rng);
      const double dp = d_product(u1, u2);
      order = std::max(order, d_maxent(u1, u2) - dp);
      probe = std::max(probe, std::abs(d_with_probe(u1, u2, optimal_entangled_probe(u1, u2)) - dp));
    }
  }
  SeesawConfig cfg;
  cfg.restarts = 3;
  cfg.seed = seed;
  for (int d = 2; d <= 3; ++d) {
    for (int t = 0; t < 5; ++t) {
      const auto e = UnitaryEnsemble::uniform({haar_unitary(d, rng), haar_unitary(d, rng)});
      const double v = optimize(e, ProbeClass::arbitraryPure, cfg).value;
      seesaw = std::max(seesaw, std::abs(v - d_product(e[0], e[1])));
    }
  }
  add(out, g, "product value dominates maximally entangled", std::max(order, 0.0), 1e-9);
  add(out, g, "entangled probe from hull weights attains product value", probe, 1e-8);
  add(out, g, "see-saw over all probes matches product value", seesaw, 1e-4);
  return out;
}

Results check_invariance(Rng& rng) {
  const std::string g = "invariance";
  Results out;
  double pair = 0.0, phase = 0.0;
  for (int d = 2; d <= 5; ++d) {
    const ProbeSpec phi = probe_max_entangled(d);
    for (int t = 0; t < 20; ++t) {
      const auto u1 = haar_unitary(d, rng), u2 = haar_unitary(d, rng);
      const auto loc = haar_unitary(d, rng);
      const PureState moved(d, d, apply_local(loc.matrix(), phi.state()));
      pair = std::max(pair, std::abs(d_with_probe(u1, u2, moved) - d_maxent(u1, u2)));
      const UnitaryOperator shifted(std::polar(1.0, 0.7 * t) * u2.matrix());
      phase = std::max({phase, std::abs(d_product(u1, shifted) - d_product(u1, u2)),
                        std::abs(d_maxent(u1, shifted) - d_maxent(u1, u2))});
    }
  }
  add(out, g, "pair value independent of the maximally entangled probe", pair, 1e-9);
  add(out, g, "global phase leaves pair values unchanged", phase, 1e-9);

  double ens = 0.0;
  for (int d = 3; d <= 4; ++d) {
    const UnitaryEnsemble e = v_family(d);
    const ProbeSpec phi = probe_max_entangled(d);
    const double base = evaluate(e, phi).successProb;
    for (int t = 0; t < 3; ++t) {
      const PureState moved(d, d, apply_local(haar_unitary(d, rng).matrix(), phi.state()));
      const double v = evaluate(e, ProbeSpec(moved, ProbeClass::maxEntangled)).successProb;
      ens = std::max(ens, std::abs(v - base));
    }
  }
  add(out, g, "ensemble value independent of the maximally entangled probe", ens, 1e-6,
      "measured for ensembles of more than two unitaries", true);
  return out;
}

Results check_nme(Rng& rng) {
  const std::string g = "nme";
  Results out;
  double formula = 0.0, advantage = 0.0, perfect = 0.0;
  for (int d = 3; d <= 7; ++d) {
    const UnitaryEnsemble e = swapped_pair(d);
    formula = std::max(formula, std::abs(d_maxent(e[0], e[1]) - (0.5 + std::sqrt(d - 1.0) / d)));
    advantage = std::max(advantage, flag(nme_advantage_check(e[0], e[1])));
    const ProbeSpec p = *builtin_probe("swapped:" + std::to_string(d));
    perfect = std::max(perfect, 1.0 - d_with_probe(e[0], e[1], p.state()));
  }
  double qubits = 0.0;
  for (int t = 0; t < 100; ++t)
    qubits = std::max(qubits, flag(!nme_advantage_check(haar_unitary(2, rng), haar_unitary(2, rng))));
  add(out, g, "maximally entangled value 1/2 + sqrt(d-1)/d on the swapped pair", formula, 1e-9);
  add(out, g, "swapped pair meets both conditions", advantage, 0.0);
  add(out, g, "two-level entangled probe separates the swapped pair", perfect, 1e-9);
  add(out, g, "no qubit pair meets both conditions", qubits, 0.0);
  return out;
}

Results check_qubit(Rng& rng) {
  const std::string g = "qubit";
  Results out;
  int mismatches = 0;
  const ComplexMatrix z = (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished();
  for (int t = 0; t < 300; ++t) {
    const auto u1 = haar_unitary(2, rng);
    UnitaryOperator u2 = haar_unitary(2, rng);
    if (t % 2) {
      const auto v = haar_unitary(2, rng);
      u2 = UnitaryOperator(u1.matrix() * v.matrix() * z * v.matrix().adjoint());
    }
    const bool traceless = std::abs((u1.matrix().adjoint() * u2.matrix()).trace()) <= 1e-9;
    const bool inside = min_hull_norm(PhasePointSet(relative_spectrum(u1, u2).phases)).minNorm <= 1e-9;
    mismatches += traceless != inside;
  }
  add(out, g, "traceless relative unitary iff hull reaches the origin", mismatches, 0.0);

  const auto id = UnitaryOperator::identity(2);
  const Complex i(0, 1);
  const UnitaryOperator x((ComplexMatrix(2, 2) << 0, 1, 1, 0).finished());
  const UnitaryOperator y((ComplexMatrix(2, 2) << 0, -i, i, 0).finished());
  const UnitaryOperator zz(z);
  const bool common = qubit_common_me_check({UnitaryEnsemble::uniform({id, x}),
                                             UnitaryEnsemble::uniform({id, y}),
                                             UnitaryEnsemble::uniform({id, zz})});
  add(out, g, "common maximally entangled probe for traceless qubit sets", flag(common), 0.0);
  return out;
}

Results check_ttrio(std::uint64_t seed) {
  const std::string g = "ttrio";
  Results out;
  const auto [s1, s2] = t_trio();
  const ProbeSpec phi = probe_max_entangled(3);
  const double ip1 = std::abs(pair_inner_product(s1[0], s1[1], phi.state()));
  const double ip2 = std::abs(pair_inner_product(s2[0], s2[1], phi.state()));
  add(out, g, "uniform weights zero the first overlap", ip1, 1e-9);
  add(out, g, "second overlap is 1/3 there", std::abs(ip2 - 1.0 / 3), 1e-9);

  SeesawConfig cfg;
  cfg.restarts = 10;
  cfg.seed = seed;
  const double alone = common_probe_search({s1}, cfg).bestWorstCase;
  const CommonProbeResult both = common_probe_search({s1, s2}, cfg);
  add(out, g, "first set alone is perfectly separable", 1.0 - alone, 1e-6);
  std::ostringstream os;
  os << "best worst-case value " << both.bestWorstCase;
  add(out, g, "no common probe separates both sets", both.bestWorstCase - (1.0 - 1e-3), 0.0,
      os.str());
  return out;
}

double gram_identity_error(const UnitaryEnsemble& e, const ProbeSpec& p) {
  const ComplexMatrix gm = gram_matrix(evolved_kets(e, p));
  return identity_deviation(gm);
}

Results check_vfamily(std::uint64_t seed) {
  const std::string g = "vfamily";
  Results out;
  double gram_basis = 0.0, gram_nme = 0.0, me = 0.0, trace = 0.0;
  for (int d = 3; d <= 7; ++d) {
    const UnitaryEnsemble e = v_family(d);
    gram_basis = std::max(gram_basis, gram_identity_error(e, probe_basis_product(d, 0)));
    gram_nme = std::max(gram_nme, gram_identity_error(e, probe_v_family(d)));
    me = std::max(me, evaluate(e, probe_max_entangled(d)).successProb - (1.0 - 1e-6));
    trace = std::max(trace, std::abs((e[0].matrix().adjoint() * e[1].matrix()).trace() - double(d - 2)));
  }
  SeesawConfig cfg;
  cfg.restarts = 5;
  cfg.seed = seed;
  const double prod = 1.0 - optimize(v_family(4), ProbeClass::product, cfg).value;
  add(out, g, "basis product probe gives orthogonal states", gram_basis, 1e-9);
  add(out, g, "rank-2 probe gives orthogonal states", gram_nme, 1e-9);
  add(out, g, "Tr(V1^dagger V2) = d - 2", trace, 1e-12);
  add(out, g, "maximally entangled probe falls short of 1", std::max(me, 0.0), 0.0);
  add(out, g, "product see-saw reaches 1 (d = 4)", prod, 1e-6);
  return out;
}

Results check_wfamily(std::uint64_t seed) {
  const std::string g = "wfamily";
  Results out;
  double gram = 0.0, me = 0.0, trace = 0.0;
  for (int d = 3; d <= 6; ++d) {
    const UnitaryEnsemble e = w_family(d);
    gram = std::max(gram, gram_identity_error(e, probe_w_family(d)));
    me = std::max(me, evaluate(e, probe_max_entangled(d)).successProb - (1.0 - 1e-6));
    trace = std::max(trace, std::abs((e[0].matrix().adjoint() * e[d].matrix()).trace() - double(d - 2)));
  }
  SeesawConfig cfg;
  cfg.restarts = 3;
  cfg.seed = seed;
  const double prod = std::abs(optimize(w_family(3), ProbeClass::product, cfg).value - 0.5);
  add(out, g, "constructed probe gives orthogonal states", gram, 1e-9);
  add(out, g, "Tr(W1^dagger W_{d+1}) = d - 2", trace, 1e-12);
  add(out, g, "maximally entangled probe falls short of 1", std::max(me, 0.0), 0.0);
  add(out, g, "product probes stay at 1/2 (d = 3)", prod, 1e-4);
  return out;
}

}  // namespace

const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> names = {
      "linalg", "hull",  "solver", "pair-equivalence", "invariance",
      "nme",    "qubit", "ttrio",  "vfamily",          "wfamily"};
  return names;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& only,
                                    std::uint64_t seed, int threads) {
  const auto& all = check_groups();
  for (const auto& name : only) {
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw InvalidArgument("unknown check group '" + name + "'");
    }
  }
  std::vector<std::string> chosen;
  for (const auto& name : all)
    if (only.empty() || std::find(only.begin(), only.end(), name) != only.end())
      chosen.push_back(name);

  // Every group gets its own stream so the results do not depend on which
  // other groups run.
  std::vector<Results> per(chosen.size());
  detail::parallel_for(static_cast<int>(chosen.size()), resolve_threads(threads), [&](int i) {
    const std::string& name = chosen[static_cast<std::size_t>(i)];
    const auto index = static_cast<std::uint64_t>(std::find(all.begin(), all.end(), name) - all.begin());
    Rng rng(seed * 1000003u + index);
    Results& r = per[static_cast<std::size_t>(i)];
    if (name == "linalg") r = check_linalg(rng);
    else if (name == "hull") r = check_hull(rng);
    else if (name == "solver") r = check_solver(rng);
    else if (name == "pair-equivalence") r = check_pairs(rng, seed);
    else if (name == "invariance") r = check_invariance(rng);
    else if (name == "nme") r = check_nme(rng);
    else if (name == "qubit") r = check_qubit(rng);
    else if (name == "ttrio") r = check_ttrio(seed);
    else if (name == "vfamily") r = check_vfamily(seed);
    else r = check_wfamily(seed);
  });
  std::vector<CheckResult> out;
  for (auto& r : per) out.insert(out.end(), r.begin(), r.end());
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed || r.advisory; });
}

}  // namespace uniprobe
