#include "uniprobe/pairwise.hpp"

#include <algorithm>
#include <cmath>

#include "uniprobe/discrimination.hpp"
#include "uniprobe/error.hpp"

namespace uniprobe {

namespace {

void require_same_dim(const UnitaryOperator& u1, const UnitaryOperator& u2,
                      const char* what) {
  if (u1.dim() != u2.dim()) {
    throw DimensionMismatch(std::string(what) + ": unitaries differ in size");
  }
}

void require_equal_priors(double p1, double p2, const char* what) {
  if (std::abs(p1 - 0.5) > 1e-12 || std::abs(p2 - 0.5) > 1e-12) {
    throw InvalidArgument(std::string(what) +
                          ": closed form holds for equal priors only; use "
                          "discriminate_optimal on the evolved states");
  }
}

double half_one_plus_sqrt(double overlap_sq, double p1p2 = 0.25) {
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * p1p2 * overlap_sq)));
}

}  // namespace

RelativeSpectrum relative_spectrum(const UnitaryOperator& u1,
                                   const UnitaryOperator& u2) {
  require_same_dim(u1, u2, "relative_spectrum");
  NormalEigen eig = eig_normal(u1.matrix().adjoint() * u2.matrix());
  // Remove the rounding drift off the unit circle.
  for (auto& z : eig.values) z /= std::abs(z);
  return {std::move(eig.values), std::move(eig.vectors)};
}

double d_product(const UnitaryOperator& u1, const UnitaryOperator& u2,
                 double p1, double p2) {
  require_same_dim(u1, u2, "d_product");
  require_equal_priors(p1, p2, "d_product");
  const HullResult h =
      min_hull_norm(PhasePointSet(relative_spectrum(u1, u2).phases));
  return half_one_plus_sqrt(h.minNorm * h.minNorm);
}

double d_maxent(const UnitaryOperator& u1, const UnitaryOperator& u2,
                double p1, double p2) {
  require_same_dim(u1, u2, "d_maxent");
  require_equal_priors(p1, p2, "d_maxent");
  const double r2 = std::abs((u1.matrix().adjoint() * u2.matrix()).trace()) /
                    u1.dim();
  return half_one_plus_sqrt(r2 * r2);
}

double d_with_probe(const UnitaryOperator& u1, const UnitaryOperator& u2,
                    const PureState& probe, double p1, double p2) {
  if (!(p1 >= 0.0 && p2 >= 0.0) ||
      std::abs(p1 + p2 - 1.0) > StateEnsemble::kPriorTol) {
    throw InvalidArgument("d_with_probe: priors must be a distribution");
  }
  const Complex ip = pair_inner_product(u1, u2, probe);
  return half_one_plus_sqrt(std::norm(ip), p1 * p2);
}

PureState optimal_entangled_probe(const UnitaryOperator& u1,
                                  const UnitaryOperator& u2) {
  require_same_dim(u1, u2, "optimal_entangled_probe");
  const int d = u1.dim();
  const RelativeSpectrum rs = relative_spectrum(u1, u2);
  const HullResult h = min_hull_norm(PhasePointSet(rs.phases));
  ComplexVector amps = ComplexVector::Zero(d * d);
  for (int j = 0; j < d; ++j) {
    const double beta = std::sqrt(std::max(0.0, h.weights[j]));
    for (int a = 0; a < d; ++a) amps(a * d + j) = beta * rs.eigenvectors(a, j);
  }
  return PureState::normalized(d, d, std::move(amps));
}

bool nme_advantage_check(const UnitaryOperator& u1,
                         const UnitaryOperator& u2) {
  require_same_dim(u1, u2, "nme_advantage_check");
  const double tr = std::abs((u1.matrix().adjoint() * u2.matrix()).trace());
  if (tr <= kNmeTraceTol) return false;
  const HullResult h =
      min_hull_norm(PhasePointSet(relative_spectrum(u1, u2).phases));
  return h.minNorm <= kNmeHullTol;
}

Complex pair_inner_product(const UnitaryOperator& u1,
                           const UnitaryOperator& u2, const PureState& probe) {
  require_same_dim(u1, u2, "pair_inner_product");
  const ComplexVector moved =
      apply_local(u1.matrix().adjoint() * u2.matrix(), probe);
  return probe.amplitudes().dot(moved);
}

PairReport pair_report(const UnitaryOperator& u1, const UnitaryOperator& u2) {
  require_same_dim(u1, u2, "pair_report");
  PairReport r;
  const RelativeSpectrum rs = relative_spectrum(u1, u2);
  r.hull = min_hull_norm(PhasePointSet(rs.phases));
  r.traceOverD = (u1.matrix().adjoint() * u2.matrix()).trace() /
                 static_cast<double>(u1.dim());
  r.dProduct = half_one_plus_sqrt(r.hull.minNorm * r.hull.minNorm);
  r.dMaxEnt = half_one_plus_sqrt(std::norm(r.traceOverD));
  r.nmeAdvantage = std::abs(r.traceOverD) * u1.dim() > kNmeTraceTol &&
                   r.hull.minNorm <= kNmeHullTol;
  return r;
}

}  // namespace uniprobe
