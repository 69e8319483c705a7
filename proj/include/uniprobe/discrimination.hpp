#pragma once

// Minimum-error discrimination of finite state ensembles.
//
// The optimal solver works on the dual program
//     minimize Tr Y   subject to   Y >= p_x rho_x  for every x
// with a log-barrier Newton method restricted to the support of
// sum_x p_x rho_x. On the central path the POVM N_x = (Y - p_x rho_x)^{-1}/t
// is primal feasible, so every returned outcome carries its own dual
// certificate and the gap Tr Y - sum_x p_x Tr(rho_x N_x) bounds the
// distance to the true optimum.

#include <utility>
#include <vector>

#include "uniprobe/qlinalg.hpp"

namespace uniprobe {

/// States of a common dimension with strictly positive priors summing to 1.
class StateEnsemble {
 public:
  static constexpr double kPriorTol = 1e-10;

  StateEnsemble(std::vector<DensityOperator> states,
                std::vector<double> priors);

  /// Equal priors.
  static StateEnsemble uniform(std::vector<DensityOperator> states);

  std::size_t size() const { return states_.size(); }
  int dim() const { return states_.front().dim(); }
  const std::vector<DensityOperator>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }

  /// p_x rho_x.
  ComplexMatrix weighted(std::size_t x) const {
    return priors_[x] * states_[x].matrix();
  }

 private:
  std::vector<DensityOperator> states_;
  std::vector<double> priors_;
};

/// Hermitian PSD elements summing to the identity.
class Povm {
 public:
  static constexpr double kHermitianTol = 1e-9;
  static constexpr double kEigenFloor = -1e-8;
  static constexpr double kCompletenessTol = 1e-8;

  explicit Povm(std::vector<ComplexMatrix> elements);

  std::size_t size() const { return elements_.size(); }
  int dim() const { return static_cast<int>(elements_.front().rows()); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t b) const { return elements_[b]; }

  /// N_b = I / n for every b.
  static Povm uniform(int dim, std::size_t n);

 private:
  std::vector<ComplexMatrix> elements_;
};

struct DiscriminationOutcome {
  double successProb = 0.0;
  Povm povm;
  /// Tr(Y) - successProb for a strictly dual-feasible Y.
  double dualGap = 0.0;
  /// Total Newton steps taken.
  int iterations = 0;
  /// dualGap <= requested tolerance.
  bool converged = false;
  ComplexMatrix dualOperator;
};

struct Certificate {
  ComplexMatrix dualOperator;
  /// Upper bound minus attained value. When `dualOperator` is infeasible the
  /// bound uses dualOperator + lambda * I with the smallest lambda >= 0 that
  /// restores feasibility, so gap >= 0 up to rounding for every valid POVM.
  double gap = 0.0;
  bool feasible = false;
};

inline constexpr double kDefaultSolverTol = 1e-6;
inline constexpr int kDefaultSolverMaxIter = 5000;
inline constexpr double kSupportCutoff = 1e-12;
inline constexpr double kCertificateFeasibilityTol = 1e-8;

/// sum_x p_x Tr(rho_x N_x).
double success_probability(const StateEnsemble& e, const Povm& m);

/// 1/2 (1 + ||p1 rho1 - p2 rho2||_1).
double helstrom_two(const DensityOperator& rho1, const DensityOperator& rho2,
                    double p1, double p2);

/// Optimal two-outcome measurement for a two-state ensemble: projector onto
/// the nonnegative eigenspace of p1 rho1 - p2 rho2 and its complement.
Povm helstrom_measurement(const StateEnsemble& e);

/// Certified optimal minimum-error discrimination. On non-convergence the
/// best primal-feasible POVM is returned with `converged == false`.
DiscriminationOutcome discriminate_optimal(
    const StateEnsemble& e, double tol = kDefaultSolverTol,
    int max_iter = kDefaultSolverMaxIter);

/// Square-root ("pretty good") measurement. The residual identity on the
/// kernel of sum_x p_x rho_x is assigned to element 0.
std::pair<Povm, double> square_root_measurement(const StateEnsemble& e);

/// Y = 1/2 sum_x (p_x rho_x N_x + N_x p_x rho_x), checked for Y >= p_x rho_x.
Certificate verify_certificate(const StateEnsemble& e, const Povm& m);

struct TrialStats {
  double frequency = 0.0;
  /// sqrt(f (1 - f) / trials).
  double stdError = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
};

/// Monte Carlo run of the guessing game: draw x from the priors, draw the
/// outcome b from Tr(rho_x N_b), count b == x.
TrialStats sample_trials(const StateEnsemble& e, const Povm& m,
                         std::size_t trials, Rng& rng);

}  // namespace uniprobe
