#include "uniprobe/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "uniprobe/error.hpp"

namespace uniprobe {

StateEnsemble::StateEnsemble(std::vector<DensityOperator> states,
                             std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.empty()) throw InvariantViolation("StateEnsemble: no states");
  if (states_.size() != priors_.size()) {
    throw DimensionMismatch("StateEnsemble: states and priors differ in size");
  }
  const int d = states_.front().dim();
  double total = 0.0;
  for (std::size_t x = 0; x < states_.size(); ++x) {
    if (states_[x].dim() != d) {
      throw DimensionMismatch("StateEnsemble: states of different dimension");
    }
    if (!(priors_[x] > 0.0)) {
      throw InvariantViolation("StateEnsemble: priors must be positive");
    }
    total += priors_[x];
  }
  if (std::abs(total - 1.0) > kPriorTol) {
    std::ostringstream os;
    os << "StateEnsemble: priors sum to " << total;
    throw InvariantViolation(os.str());
  }
}

StateEnsemble StateEnsemble::uniform(std::vector<DensityOperator> states) {
  const std::size_t n = states.size();
  return StateEnsemble(std::move(states),
                       std::vector<double>(n, n ? 1.0 / n : 0.0));
}

Povm::Povm(std::vector<ComplexMatrix> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw InvariantViolation("Povm: no elements");
  const auto d = elements_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t b = 0; b < elements_.size(); ++b) {
    const ComplexMatrix& n = elements_[b];
    if (n.rows() != d || n.cols() != d) {
      throw DimensionMismatch("Povm: elements of different shape");
    }
    if (!is_hermitian(n, kHermitianTol)) {
      throw InvariantViolation("Povm: element " + std::to_string(b) +
                               " is not Hermitian");
    }
    if (min_eigenvalue(n) < kEigenFloor) {
      throw InvariantViolation("Povm: element " + std::to_string(b) +
                               " is not positive semidefinite");
    }
    sum += n;
  }
  const double dev = identity_deviation(sum);
  if (dev > kCompletenessTol) {
    std::ostringstream os;
    os << "Povm: elements sum to identity only within " << dev;
    throw InvariantViolation(os.str());
  }
}

Povm Povm::uniform(int dim, std::size_t n) {
  return Povm(std::vector<ComplexMatrix>(
      n, ComplexMatrix::Identity(dim, dim) / static_cast<double>(n)));
}

double success_probability(const StateEnsemble& e, const Povm& m) {
  if (m.size() != e.size() || m.dim() != e.dim()) {
    throw DimensionMismatch("success_probability: POVM does not fit ensemble");
  }
  double p = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    p += e.priors()[x] * (e.states()[x].matrix() * m[x]).trace().real();
  }
  return p;
}

double helstrom_two(const DensityOperator& rho1, const DensityOperator& rho2,
                    double p1, double p2) {
  if (rho1.dim() != rho2.dim()) {
    throw DimensionMismatch("helstrom_two: states of different dimension");
  }
  if (p1 < 0 || p2 < 0 || std::abs(p1 + p2 - 1.0) > StateEnsemble::kPriorTol) {
    throw InvalidArgument("helstrom_two: priors must be a distribution");
  }
  return 0.5 * (1.0 + trace_norm(p1 * rho1.matrix() - p2 * rho2.matrix()));
}

Povm helstrom_measurement(const StateEnsemble& e) {
  if (e.size() != 2) {
    throw InvalidArgument("helstrom_measurement: needs exactly two states");
  }
  const ComplexMatrix gamma = e.weighted(0) - e.weighted(1);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gamma);
  const auto d = gamma.rows();
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (es.eigenvalues()(i) > 0) {
      const auto v = es.eigenvectors().col(i);
      p += v * v.adjoint();
    }
  }
  return Povm({p, ComplexMatrix::Identity(d, d) - p});
}

// ---------------------------------------------------------------------------
// Dual log-barrier solver.

namespace {

// Real coordinates for Hermitian m x m matrices: diagonal units, then for
// every k < l the symmetric pair E_kl + E_lk and the antisymmetric pair
// i E_kl - i E_lk. Each basis element has at most two nonzero entries.
struct HermitianBasis {
  struct Entry {
    int row, col;
    Complex value;
  };
  std::vector<std::vector<Entry>> elements;
  int m;

  explicit HermitianBasis(int m_) : m(m_) {
    for (int k = 0; k < m; ++k) elements.push_back({{k, k, 1.0}});
    for (int k = 0; k < m; ++k) {
      for (int l = k + 1; l < m; ++l) {
        elements.push_back({{k, l, 1.0}, {l, k, 1.0}});
        elements.push_back({{k, l, Complex(0, 1)}, {l, k, Complex(0, -1)}});
      }
    }
  }

  std::size_t size() const { return elements.size(); }

  ComplexMatrix assemble(const RealVector& c) const {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (std::size_t a = 0; a < elements.size(); ++a)
      for (const Entry& en : elements[a])
        out(en.row, en.col) += c(static_cast<Eigen::Index>(a)) * en.value;
    return out;
  }

  // Tr(X E_a) for every basis element.
  RealVector coordinates_of_trace(const ComplexMatrix& x) const {
    RealVector out(static_cast<Eigen::Index>(elements.size()));
    for (std::size_t a = 0; a < elements.size(); ++a) {
      Complex s = 0.0;
      for (const Entry& en : elements[a]) s += x(en.col, en.row) * en.value;
      out(static_cast<Eigen::Index>(a)) = s.real();
    }
    return out;
  }
};

struct BarrierState {
  ComplexMatrix y;
  std::vector<ComplexMatrix> inverses;  // (Y - r_x)^{-1}
  double objective = 0.0;               // t Tr Y - sum_x log det(Y - r_x)
};

// Evaluates the barrier at y; empty when some slack is not positive definite.
std::optional<BarrierState> evaluate_barrier(
    const ComplexMatrix& y, const std::vector<ComplexMatrix>& r, double t) {
  BarrierState s;
  s.y = y;
  s.objective = t * y.trace().real();
  const auto m = y.rows();
  for (const ComplexMatrix& rx : r) {
    const ComplexMatrix slack = y - rx;
    Eigen::LLT<ComplexMatrix> llt(slack);
    if (llt.info() != Eigen::Success) return std::nullopt;
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double diag = llt.matrixLLT()(i, i).real();
      if (!(diag > 0)) return std::nullopt;
      logdet += 2.0 * std::log(diag);
    }
    s.objective -= logdet;
    s.inverses.push_back(llt.solve(ComplexMatrix::Identity(m, m)));
  }
  return s;
}

constexpr double kCenteringTol = 1e-9;
constexpr int kMaxCenteringSteps = 60;

struct CenteringResult {
  BarrierState state;
  int steps = 0;
  bool stalled = false;
};

CenteringResult center(BarrierState state, const std::vector<ComplexMatrix>& r,
                       double t, const HermitianBasis& basis, int max_steps) {
  const auto p = static_cast<Eigen::Index>(basis.size());
  CenteringResult out{std::move(state)};
  for (; out.steps < max_steps; ++out.steps) {
    const BarrierState& s = out.state;
    // gradient
    ComplexMatrix ksum = ComplexMatrix::Zero(basis.m, basis.m);
    for (const auto& k : s.inverses) ksum += k;
    RealVector grad =
        basis.coordinates_of_trace(t * ComplexMatrix::Identity(basis.m, basis.m) -
                                   ksum);

    // Hessian: H_ab = sum_x Tr(K E_a K E_b), with
    // Tr(K e_i e_j^T K e_p e_q^T) = K(q,i) K(j,p).
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(p, p);
    for (const auto& k : s.inverses) {
      for (Eigen::Index a = 0; a < p; ++a) {
        const auto& ea = basis.elements[static_cast<std::size_t>(a)];
        for (Eigen::Index b = a; b < p; ++b) {
          const auto& eb = basis.elements[static_cast<std::size_t>(b)];
          Complex acc = 0.0;
          for (const auto& x : ea)
            for (const auto& y : eb)
              acc += x.value * y.value * k(y.col, x.row) * k(x.col, y.row);
          hess(a, b) += acc.real();
        }
      }
    }
    hess.triangularView<Eigen::StrictlyLower>() = hess.transpose();

    // Jacobi scaling before factorizing; the slacks become nearly singular
    // late on the path and the raw Hessian is badly scaled.
    RealVector scale = hess.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd scaled = scale.asDiagonal() * hess * scale.asDiagonal();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(scaled);
    const RealVector step =
        scale.asDiagonal() *
        ldlt.solve(-(scale.asDiagonal() * grad).eval());
    const double decrement2 = -grad.dot(step);
    if (!(decrement2 >= 0) || !std::isfinite(decrement2)) {
      out.stalled = true;
      break;
    }
    if (0.5 * decrement2 < kCenteringTol) break;

    const ComplexMatrix dy = basis.assemble(step);
    double alpha = 1.0;
    std::optional<BarrierState> next;
    while (alpha > 1e-20) {
      next = evaluate_barrier(s.y + alpha * dy, r, t);
      if (next && next->objective <= s.objective - 0.25 * alpha * decrement2)
        break;
      next.reset();
      alpha *= 0.5;
    }
    if (!next) {
      out.stalled = true;
      break;
    }
    out.state = std::move(*next);
  }
  return out;
}

}  // namespace

DiscriminationOutcome discriminate_optimal(const StateEnsemble& e, double tol,
                                           int max_iter) {
  if (!(tol > 0)) throw InvalidArgument("discriminate_optimal: tol must be > 0");
  const int d = e.dim();
  const std::size_t n = e.size();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  if (n == 1) {
    Povm povm({id});
    const ComplexMatrix y = e.weighted(0);
    return {1.0, std::move(povm), 0.0, 0, true, y};
  }

  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (std::size_t x = 0; x < n; ++x) total += e.weighted(x);
  const ComplexMatrix basis = support_basis(total, kSupportCutoff);
  const int m = static_cast<int>(basis.cols());

  std::vector<ComplexMatrix> reduced;
  reduced.reserve(n);
  double top = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    ComplexMatrix rx = basis.adjoint() * e.weighted(x) * basis;
    rx = 0.5 * (rx + rx.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rx, Eigen::EigenvaluesOnly);
    top = std::max(top, es.eigenvalues().maxCoeff());
    reduced.push_back(std::move(rx));
  }

  const HermitianBasis herm(m);
  const ComplexMatrix idm = ComplexMatrix::Identity(m, m);
  double t = 1.0;
  auto state = evaluate_barrier((top + 1.0) * idm, reduced, t);
  if (!state) throw ConvergenceFailure("discriminate_optimal: bad start");

  // Target barrier gap n*m/t well below tol so the final certified gap,
  // computed after renormalizing the POVM, lands under tol with room.
  const double target = std::max(1e-3 * tol, 1e-12);
  constexpr double kGrowth = 10.0;
  int iterations = 0;
  bool stalled = false;

  struct Candidate {
    std::vector<ComplexMatrix> povm;  // reduced
    ComplexMatrix y;
    double value = -1.0;
    double gap = std::numeric_limits<double>::infinity();
  };
  Candidate best;

  auto extract = [&](const BarrierState& s) {
    Candidate c;
    ComplexMatrix g = ComplexMatrix::Zero(m, m);
    for (const auto& k : s.inverses) {
      ComplexMatrix nx = k / t;
      nx = 0.5 * (nx + nx.adjoint()).eval();
      g += nx;
      c.povm.push_back(std::move(nx));
    }
    const ComplexMatrix gis = inverse_sqrt_psd(g, 0.0);
    c.value = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      ComplexMatrix nx = gis * c.povm[x] * gis;
      nx = 0.5 * (nx + nx.adjoint()).eval();
      c.value += (reduced[x] * nx).trace().real();
      c.povm[x] = std::move(nx);
    }
    c.y = s.y;
    c.gap = s.y.trace().real() - c.value;
    return c;
  };

  while (iterations < max_iter) {
    auto res = center(std::move(*state), reduced, t, herm,
                      std::min(kMaxCenteringSteps, max_iter - iterations));
    iterations += std::max(res.steps, 1);
    stalled = res.stalled;
    Candidate c = extract(res.state);
    if (c.gap < best.gap) best = std::move(c);
    state = std::move(res.state);
    if (stalled) break;
    if (static_cast<double>(n * m) / t <= target && best.gap <= tol) break;
    t *= kGrowth;
    // Re-evaluate inverses at the new t (objective changes, inverses do not).
    state = evaluate_barrier(state->y, reduced, t);
    if (!state) break;
  }

  // Lift back to the full space; the kernel of sum_x p_x rho_x goes to N_0.
  std::vector<ComplexMatrix> full;
  full.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    ComplexMatrix nx = basis * best.povm[x] * basis.adjoint();
    if (x == 0) nx += id - basis * basis.adjoint();
    full.push_back(0.5 * (nx + nx.adjoint()));
  }
  Povm povm(std::move(full));
  const double value = success_probability(e, povm);
  ComplexMatrix y = basis * best.y * basis.adjoint();
  const double gap = std::max(0.0, y.trace().real() - value);
  return {value, std::move(povm), gap, iterations, gap <= tol, std::move(y)};
}

std::pair<Povm, double> square_root_measurement(const StateEnsemble& e) {
  const int d = e.dim();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (std::size_t x = 0; x < e.size(); ++x) total += e.weighted(x);
  const ComplexMatrix s_inv_sqrt = inverse_sqrt_psd(total, kSupportCutoff);
  const ComplexMatrix supp = support_basis(total, kSupportCutoff);

  std::vector<ComplexMatrix> elements;
  elements.reserve(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    ComplexMatrix nx = s_inv_sqrt * e.weighted(x) * s_inv_sqrt;
    elements.push_back(0.5 * (nx + nx.adjoint()));
  }
  elements[0] += ComplexMatrix::Identity(d, d) - supp * supp.adjoint();
  Povm povm(std::move(elements));
  const double value = success_probability(e, povm);
  return {std::move(povm), value};
}

Certificate verify_certificate(const StateEnsemble& e, const Povm& m) {
  if (m.size() != e.size() || m.dim() != e.dim()) {
    throw DimensionMismatch("verify_certificate: POVM does not fit ensemble");
  }
  const int d = e.dim();
  ComplexMatrix y = ComplexMatrix::Zero(d, d);
  for (std::size_t x = 0; x < e.size(); ++x) {
    const ComplexMatrix rx = e.weighted(x);
    y += 0.5 * (rx * m[x] + m[x] * rx);
  }
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < e.size(); ++x)
    worst = std::min(worst, min_eigenvalue(y - e.weighted(x)));
  const double shift = std::max(0.0, -worst);
  const double value = success_probability(e, m);
  Certificate c;
  c.gap = y.trace().real() + d * shift - value;
  c.feasible = worst >= -kCertificateFeasibilityTol;
  c.dualOperator = std::move(y);
  return c;
}

TrialStats sample_trials(const StateEnsemble& e, const Povm& m,
                         std::size_t trials, Rng& rng) {
  if (trials < 1) throw InvalidArgument("sample_trials: trials must be >= 1");
  if (m.dim() != e.dim()) {
    throw DimensionMismatch("sample_trials: POVM does not fit ensemble");
  }
  std::vector<std::discrete_distribution<std::size_t>> outcome;
  outcome.reserve(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    std::vector<double> born(m.size());
    for (std::size_t b = 0; b < m.size(); ++b)
      born[b] = std::max(0.0, (e.states()[x].matrix() * m[b]).trace().real());
    outcome.emplace_back(born.begin(), born.end());
  }
  std::discrete_distribution<std::size_t> source(e.priors().begin(),
                                                 e.priors().end());
  TrialStats out;
  out.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t x = source(rng);
    if (outcome[x](rng) == x) ++out.successes;
  }
  out.frequency = static_cast<double>(out.successes) / trials;
  out.stdError =
      std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(trials));
  return out;
}

}  // namespace uniprobe
