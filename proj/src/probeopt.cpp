#include "uniprobe/probeopt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "uniprobe/error.hpp"
#include "uniprobe/pairwise.hpp"
#include "parallel.hpp"

namespace uniprobe {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UNIPROBE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

DiscriminationOutcome evaluate(const UnitaryEnsemble& e, const ProbeSpec& probe,
                               double tol) {
  return discriminate_optimal(evolve(e, probe), tol);
}

ComplexVector top_eigenvector(const ComplexMatrix& h, double degeneracy_tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const auto n = h.rows();
  const double top = es.eigenvalues()(n - 1);
  const double scale = std::max(1.0, std::abs(top));
  Eigen::Index lo = n - 1;
  while (lo > 0 && top - es.eigenvalues()(lo - 1) <= degeneracy_tol * scale) --lo;

  ComplexVector v;
  if (lo == n - 1) {
    v = es.eigenvectors().col(n - 1);
  } else {
    const ComplexMatrix basis = es.eigenvectors().rightCols(n - lo);
    Eigen::Index best = 0;
    double best_overlap = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double o = basis.row(i).squaredNorm();
      if (o > best_overlap + 1e-12) {
        best_overlap = o;
        best = i;
      }
    }
    v = basis * basis.row(best).adjoint();
    v.normalize();
  }
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  v *= std::conj(v(k)) / std::abs(v(k));
  return v;
}

namespace {

// Unitaries lifted to C^d (x) C^dimB, ready for the see-saw.
struct Lifted {
  std::vector<ComplexMatrix> u;
  std::vector<double> priors;
  int dimA = 0;
  int dimB = 1;

  Lifted(const UnitaryEnsemble& e, int dimB_) : priors(e.priors()), dimA(e.dim()), dimB(dimB_) {
    const ComplexMatrix id = ComplexMatrix::Identity(dimB, dimB);
    for (const auto& op : e.unitaries())
      u.push_back(dimB == 1 ? op.matrix() : tensor(op.matrix(), id));
  }

  StateEnsemble evolve(const ComplexVector& ket) const {
    std::vector<DensityOperator> states;
    states.reserve(u.size());
    for (const auto& m : u) {
      ComplexVector k = m * ket;
      k.normalize();
      states.push_back(DensityOperator::from_ket(k));
    }
    return StateEnsemble(std::move(states), priors);
  }

  ComplexMatrix update_operator(const Povm& m) const {
    ComplexMatrix out = ComplexMatrix::Zero(m.dim(), m.dim());
    for (std::size_t x = 0; x < u.size(); ++x)
      out += priors[x] * (u[x].adjoint() * m[x] * u[x]);
    return 0.5 * (out + out.adjoint());
  }
};

}  // namespace

ComplexMatrix probe_update_operator(const UnitaryEnsemble& e, const Povm& m,
                                    int dimB) {
  if (m.size() != e.size() || m.dim() != e.dim() * dimB) {
    throw DimensionMismatch("probe_update_operator: POVM does not fit ensemble");
  }
  return Lifted(e, dimB).update_operator(m);
}

namespace {

struct Measured {
  double value;
  double slack;
  Povm povm;
};

// Optimal measurement for fixed probe. Two states get the exact projective
// measurement; larger ensembles go through the certified solver.
Measured measure(const Lifted& l, const ComplexVector& ket, double solver_tol) {
  const StateEnsemble se = l.evolve(ket);
  if (se.size() == 2) {
    Povm m = helstrom_measurement(se);
    const double v = success_probability(se, m);
    return {v, 1e-12, std::move(m)};
  }
  DiscriminationOutcome o = discriminate_optimal(se, solver_tol);
  return {o.successProb, o.dualGap + 1e-9, std::move(o.povm)};
}

struct SeesawRun {
  ComplexVector ket;
  std::vector<double> trace;
  bool monotone = true;
  bool converged = false;
};

SeesawRun run_seesaw(const Lifted& l, ComplexVector ket, const SeesawConfig& cfg) {
  SeesawRun run;
  Measured cur = measure(l, ket, cfg.solverTol);
  run.trace.push_back(cur.value);
  for (int it = 0; it < cfg.maxIter; ++it) {
    ComplexVector next = top_eigenvector(l.update_operator(cur.povm));
    Measured m = measure(l, next, cfg.solverTol);
    // Near perfect discrimination plain see-saw steps shrink like 1/k. Push
    // further along the step while that keeps paying off.
    const Complex ov = ket.dot(next);
    if (std::abs(ov) > 0.0 && m.value > cur.value) {
      const ComplexVector step = next * (std::conj(ov) / std::abs(ov)) - ket;
      for (double s = 2.0; s <= 1024.0; s *= 2.0) {
        ComplexVector trial = (ket + s * step).normalized();
        Measured mt = measure(l, trial, cfg.solverTol);
        if (!(mt.value > m.value)) break;
        next = std::move(trial);
        m = std::move(mt);
      }
    }
    const double gain = m.value - cur.value;
    if (gain < -(cur.slack + m.slack)) run.monotone = false;
    if (gain <= 0.0) {
      // No progress; the current probe stays.
      run.converged = true;
      break;
    }
    ket = std::move(next);
    cur = std::move(m);
    run.trace.push_back(cur.value);
    if (gain < cfg.tol) {
      run.converged = true;
      break;
    }
  }
  run.ket = std::move(ket);
  return run;
}

ProbeSpec as_probe(const ComplexVector& ket, int d, ProbeClass cls) {
  if (cls == ProbeClass::product) {
    ComplexVector anc = ComplexVector::Zero(d);
    anc(0) = 1.0;
    return ProbeSpec(PureState::product(ket.normalized(), anc),
                     ProbeClass::product);
  }
  return ProbeSpec::classify(PureState::normalized(d, d, ket));
}

}  // namespace

ProbeOptResult optimize(const UnitaryEnsemble& e, ProbeClass cls,
                        const SeesawConfig& cfg) {
  if (cfg.restarts < 1) throw InvalidArgument("optimize: restarts must be >= 1");
  if (!(cfg.tol > 0)) throw InvalidArgument("optimize: tol must be > 0");
  const int d = e.dim();

  if (cls == ProbeClass::maxEntangled) {
    ProbeSpec probe = probe_max_entangled(d);
    DiscriminationOutcome o = evaluate(e, probe, cfg.solverTol);
    const double v = o.successProb;
    return {v, std::move(probe), std::move(o), {v}, {v}, true, true};
  }

  const int dimB = cls == ProbeClass::product ? 1 : d;
  const Lifted lifted(e, dimB);

  struct Done {
    SeesawRun run;
    ProbeSpec probe;
    DiscriminationOutcome outcome;
  };
  std::vector<std::optional<Done>> done(static_cast<std::size_t>(cfg.restarts));
  detail::parallel_for(cfg.restarts, resolve_threads(cfg.threads), [&](int r) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(r));
    SeesawRun run = run_seesaw(lifted, haar_vector(d * dimB, rng), cfg);
    ProbeSpec probe = as_probe(run.ket, d, cls);
    DiscriminationOutcome o = evaluate(e, probe, cfg.solverTol);
    done[static_cast<std::size_t>(r)] =
        Done{std::move(run), std::move(probe), std::move(o)};
  });

  std::size_t best = 0;
  std::vector<double> values;
  bool monotone = true;
  for (std::size_t r = 0; r < done.size(); ++r) {
    values.push_back(done[r]->outcome.successProb);
    monotone = monotone && done[r]->run.monotone;
    if (values[r] > values[best]) best = r;
  }
  Done& w = *done[best];
  return {values[best],      std::move(w.probe),     std::move(w.outcome),
          std::move(values), std::move(w.run.trace), monotone,
          w.run.converged};
}

namespace {

std::vector<TableRow> make_table(const std::vector<int>& dims,
                                 const SeesawConfig& cfg, bool with_arbitrary,
                                 UnitaryEnsemble (*family)(int),
                                 ProbeSpec (*nme_probe)(int)) {
  std::vector<TableRow> rows;
  for (int d : dims) {
    if (d < 3) {
      std::ostringstream os;
      os << "table: dimension " << d << " is below 3";
      throw InvalidArgument(os.str());
    }
    const UnitaryEnsemble e = family(d);
    TableRow row;
    row.d = d;
    const ProbeOptResult p = optimize(e, ProbeClass::product, cfg);
    row.dP = {p.value, p.outcome.dualGap};
    const DiscriminationOutcome nme = evaluate(e, nme_probe(d), cfg.solverTol);
    row.dNME = {nme.successProb, nme.dualGap};
    const DiscriminationOutcome me =
        evaluate(e, probe_max_entangled(d), cfg.solverTol);
    row.dME = {me.successProb, me.dualGap};
    if (with_arbitrary) {
      const ProbeOptResult a = optimize(e, ProbeClass::arbitraryPure, cfg);
      row.dArbitrary = TableCell{a.value, a.outcome.dualGap};
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<TableRow> table_v(const std::vector<int>& dims,
                              const SeesawConfig& cfg, bool with_arbitrary) {
  return make_table(dims, cfg, with_arbitrary, v_family, probe_v_family);
}

std::vector<TableRow> table_w(const std::vector<int>& dims,
                              const SeesawConfig& cfg, bool with_arbitrary) {
  return make_table(dims, cfg, with_arbitrary, w_family, probe_w_family);
}

CommonProbeResult common_probe_search(const std::vector<UnitaryEnsemble>& pairs,
                                      const SeesawConfig& cfg) {
  if (pairs.empty()) throw InvalidArgument("common_probe_search: no pairs");
  if (cfg.restarts < 1) {
    throw InvalidArgument("common_probe_search: restarts must be >= 1");
  }
  const int d = pairs.front().dim();
  std::vector<Lifted> lifted;
  for (const auto& p : pairs) {
    if (p.size() != 2) {
      throw InvalidArgument("common_probe_search: every entry must hold 2 unitaries");
    }
    if (p.dim() != d) throw DimensionMismatch("common_probe_search: mixed dims");
    lifted.emplace_back(p, d);
  }
  const std::size_t k = pairs.size();
  const int iters = std::max(cfg.maxIter, 2);

  struct Best {
    double worst = -1.0;
    ComplexVector ket;
  };
  std::vector<Best> best(static_cast<std::size_t>(cfg.restarts));
  detail::parallel_for(cfg.restarts, resolve_threads(cfg.threads), [&](int r) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(r));
    ComplexVector ket = haar_vector(d * d, rng);
    Best& b = best[static_cast<std::size_t>(r)];
    std::vector<double> vals(k);
    std::vector<std::optional<Povm>> povms(k);
    for (int it = 0; it < iters; ++it) {
      for (std::size_t j = 0; j < k; ++j) {
        Measured m = measure(lifted[j], ket, cfg.solverTol);
        vals[j] = m.value;
        povms[j] = std::move(m.povm);
      }
      const double worst = *std::min_element(vals.begin(), vals.end());
      if (worst > b.worst) {
        b.worst = worst;
        b.ket = ket;
      }
      const double temp = std::pow(1e-3, double(it) / (iters - 1));
      ComplexMatrix h = ComplexMatrix::Zero(d * d, d * d);
      double norm = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const double w = std::exp(-(vals[j] - worst) / temp);
        h += w * lifted[j].update_operator(*povms[j]);
        norm += w;
      }
      ket = top_eigenvector(h / norm);
    }
  });

  std::size_t win = 0;
  for (std::size_t r = 1; r < best.size(); ++r)
    if (best[r].worst > best[win].worst) win = r;

  PureState state = PureState::normalized(d, d, best[win].ket);
  std::vector<double> per;
  for (const auto& p : pairs) per.push_back(d_with_probe(p[0], p[1], state, p.priors()[0], p.priors()[1]));
  const double worst = *std::min_element(per.begin(), per.end());
  return {worst, ProbeSpec::classify(std::move(state)), std::move(per)};
}

bool qubit_common_me_check(const std::vector<UnitaryEnsemble>& sets,
                           double tol) {
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const UnitaryEnsemble& e = sets[s];
    if (e.dim() != 2) {
      std::ostringstream os;
      os << "qubit_common_me_check: set " << s << " has dimension " << e.dim();
      throw PreconditionViolation(os.str());
    }
    for (std::size_t x = 0; x < e.size(); ++x) {
      for (std::size_t y = x + 1; y < e.size(); ++y) {
        const auto rs = relative_spectrum(e[x], e[y]);
        if (!origin_in_hull(PhasePointSet(rs.phases), tol)) {
          std::ostringstream os;
          os << "qubit_common_me_check: set " << s << ", members " << x
             << " and " << y << " cannot be told apart perfectly by any probe";
          throw PreconditionViolation(os.str());
        }
      }
    }
  }
  const ProbeSpec phi = probe_max_entangled(2);
  for (const auto& e : sets) {
    if (evaluate(e, phi, std::min(tol, kDefaultSolverTol)).successProb < 1.0 - tol)
      return false;
  }
  return true;
}

}  // namespace uniprobe
