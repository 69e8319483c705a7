#pragma once

// Two-unitary discrimination in closed form. Everything here is a function
// of the relative unitary U1^dagger U2: its eigenphases fix the product-probe
// value through the hull geometry, its normalized trace fixes the value for
// maximally entangled probes.

#include "uniprobe/hullgeom.hpp"
#include "uniprobe/qlinalg.hpp"

namespace uniprobe {

/// U1^dagger U2 = sum_j phases[j] |psi_j><psi_j|.
struct RelativeSpectrum {
  std::vector<Complex> phases;
  ComplexMatrix eigenvectors;
};

struct PairReport {
  double dProduct = 0.5;
  double dMaxEnt = 0.5;
  HullResult hull;
  Complex traceOverD;  ///< Tr(U1^dagger U2) / d
  bool nmeAdvantage = false;
};

inline constexpr double kNmeTraceTol = 1e-9;
inline constexpr double kNmeHullTol = 1e-9;

RelativeSpectrum relative_spectrum(const UnitaryOperator& u1,
                                   const UnitaryOperator& u2);

/// Best value over product probes (equal priors):
/// 1/2 [1 + sqrt(1 - r1^2)] with r1 the hull distance of the eigenphases.
/// Priors other than 1/2 are rejected with InvalidArgument.
double d_product(const UnitaryOperator& u1, const UnitaryOperator& u2,
                 double p1 = 0.5, double p2 = 0.5);

/// Value for a maximally entangled probe (equal priors):
/// 1/2 [1 + sqrt(1 - |Tr(U1^dagger U2)|^2 / d^2)].
double d_maxent(const UnitaryOperator& u1, const UnitaryOperator& u2,
                double p1 = 0.5, double p2 = 0.5);

/// Helstrom value of the two evolved pure states (U_x (x) I)|probe>.
double d_with_probe(const UnitaryOperator& u1, const UnitaryOperator& u2,
                    const PureState& probe, double p1 = 0.5, double p2 = 0.5);

/// sum_j sqrt(alpha_j) |psi_j>|j>, alpha the hull weights of the relative
/// eigenphases. Reaches d_product.
PureState optimal_entangled_probe(const UnitaryOperator& u1,
                                  const UnitaryOperator& u2);

/// Tr(U1^dagger U2) != 0 while the eigenphase hull contains the origin: a
/// maximally entangled probe falls short of perfect discrimination that some
/// other probe attains.
bool nme_advantage_check(const UnitaryOperator& u1, const UnitaryOperator& u2);

/// <probe| (U1^dagger U2 (x) I) |probe>.
Complex pair_inner_product(const UnitaryOperator& u1,
                           const UnitaryOperator& u2, const PureState& probe);

PairReport pair_report(const UnitaryOperator& u1, const UnitaryOperator& u2);

}  // namespace uniprobe
