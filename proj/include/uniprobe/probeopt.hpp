#pragma once

// Optimization of the discrimination value over a class of probes.
//
// The see-saw alternates two exact sub-steps. With the probe fixed, the
// optimal measurement on the evolved states is solved. With the POVM fixed,
// the success probability is the quadratic form <psi| M |psi> with
//     M = sum_x p_x (U_x (x) I)^dagger N_x (U_x (x) I),
// so the best probe is a top eigenvector of M. Each run is monotone and
// ends at a lower bound on the class optimum.

#include <cstdint>
#include <optional>
#include <vector>

#include "uniprobe/discrimination.hpp"
#include "uniprobe/families.hpp"

namespace uniprobe {

struct SeesawConfig {
  int restarts = 20;
  int maxIter = 300;
  /// Stop once a sweep improves the value by less than this.
  double tol = 1e-10;
  std::uint64_t seed = 1;
  /// Concurrent restarts. 0 defers to UNIPROBE_THREADS, then the hardware.
  int threads = 0;
  /// Tolerance handed to the measurement solver.
  double solverTol = kDefaultSolverTol;
};

struct ProbeOptResult {
  double value = 0.0;
  ProbeSpec probe;
  DiscriminationOutcome outcome;
  /// Final certified value of every restart, in restart order.
  std::vector<double> restartValues;
  /// See-saw values of the winning restart, one per sweep.
  std::vector<double> trace;
  /// No sweep of any restart lowered the value beyond solver accuracy.
  bool monotone = true;
  /// The winning restart stopped on `tol` rather than `maxIter`.
  bool converged = true;
};

/// Threads to use for `requested` (see SeesawConfig::threads). Always >= 1.
int resolve_threads(int requested);

/// Optimal measurement on the ensemble evolved by `probe`.
DiscriminationOutcome evaluate(const UnitaryEnsemble& e, const ProbeSpec& probe,
                               double tol = kDefaultSolverTol);

/// sum_x p_x (U_x (x) I_dimB)^dagger N_x (U_x (x) I_dimB). The POVM acts on
/// C^d (x) C^dimB.
ComplexMatrix probe_update_operator(const UnitaryEnsemble& e, const Povm& m,
                                    int dimB);

/// Unit eigenvector for the largest eigenvalue of Hermitian `h`. When that
/// eigenvalue is degenerate the result is the projection of the basis vector
/// with the largest overlap on the eigenspace (lowest index on ties). The
/// largest-modulus component is made real and positive.
ComplexVector top_eigenvector(const ComplexMatrix& h, double degeneracy_tol = 1e-9);

/// Best value over probes of class `cls`. The maximally entangled class is
/// the canonical probe with no search. Product probes are optimized on the
/// system alone, since the ancilla factors out.
ProbeOptResult optimize(const UnitaryEnsemble& e, ProbeClass cls,
                        const SeesawConfig& cfg = {});

struct TableCell {
  double value = 0.0;
  double gap = 0.0;
};

struct TableRow {
  int d = 0;
  TableCell dP;
  TableCell dNME;
  TableCell dME;
  /// optimize(arbitraryPure), when requested.
  std::optional<TableCell> dArbitrary;
};

/// Rows for the V family: dP by product-class see-saw, dNME and dME from the
/// constructed and the maximally entangled probes. Requires every d >= 3.
std::vector<TableRow> table_v(const std::vector<int>& dims,
                              const SeesawConfig& cfg = {},
                              bool with_arbitrary = false);
/// Same for the W family.
std::vector<TableRow> table_w(const std::vector<int>& dims,
                              const SeesawConfig& cfg = {},
                              bool with_arbitrary = false);

struct CommonProbeResult {
  /// min over pairs of d_with_probe at `probe`.
  double bestWorstCase = 0.0;
  ProbeSpec probe;
  std::vector<double> perPair;
};

/// Searches for one probe that is good for every two-unitary ensemble in
/// `pairs` at once, maximizing the worst pair value. The inner step is the
/// see-saw on a soft-min of the pair values whose temperature is annealed
/// from 1 down to 1e-3; the reported figure is always the true minimum.
CommonProbeResult common_probe_search(const std::vector<UnitaryEnsemble>& pairs,
                                      const SeesawConfig& cfg = {});

/// For qubit sets that are each perfectly distinguishable with some probe:
/// is the canonical maximally entangled probe perfect for all of them?
/// Throws PreconditionViolation for a non-qubit set or a set containing a
/// pair that no probe separates perfectly.
bool qubit_common_me_check(const std::vector<UnitaryEnsemble>& sets,
                           double tol = 1e-6);

}  // namespace uniprobe
