#pragma once

// Unitary ensembles and probe states: the concrete families whose probe
// hierarchies the library is built to exhibit, plus the generic types they
// are expressed in.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uniprobe/discrimination.hpp"
#include "uniprobe/qlinalg.hpp"

namespace uniprobe {

/// Unitaries of a common dimension with positive priors summing to 1.
class UnitaryEnsemble {
 public:
  UnitaryEnsemble(std::vector<UnitaryOperator> unitaries,
                  std::vector<double> priors);

  static UnitaryEnsemble uniform(std::vector<UnitaryOperator> unitaries);

  std::size_t size() const { return unitaries_.size(); }
  int dim() const { return unitaries_.front().dim(); }
  const std::vector<UnitaryOperator>& unitaries() const { return unitaries_; }
  const std::vector<double>& priors() const { return priors_; }
  const UnitaryOperator& operator[](std::size_t x) const {
    return unitaries_[x];
  }

 private:
  std::vector<UnitaryOperator> unitaries_;
  std::vector<double> priors_;
};

enum class ProbeClass { product, maxEntangled, arbitraryPure };

std::string_view to_string(ProbeClass c);
/// Accepts "product", "maxent"/"maxEntangled", "arbitrary"/"arbitraryPure".
ProbeClass parse_probe_class(std::string_view name);

/// A pure probe on C^d (x) C^d together with its Schmidt data. The tag must
/// agree with the Schmidt coefficients: product iff rank 1, maxEntangled iff
/// every coefficient is 1/sqrt(d).
class ProbeSpec {
 public:
  static constexpr double kRankCutoff = 1e-9;
  static constexpr double kMaxEntTol = 1e-9;

  ProbeSpec(PureState state, ProbeClass tag);

  /// Tags `state` by its Schmidt coefficients.
  static ProbeSpec classify(PureState state);

  const PureState& state() const { return state_; }
  ProbeClass tag() const { return tag_; }
  const SchmidtDecomposition& schmidt() const { return schmidt_; }
  int dim() const { return state_.dimA(); }

 private:
  PureState state_;
  ProbeClass tag_;
  SchmidtDecomposition schmidt_;
};

/// {I, swap(1,2), ..., swap(1,d)}: member l exchanges basis vectors 1 and l.
UnitaryEnsemble v_family(int d);
/// Same column structure on top of an arbitrary unitary V_1 whose columns play
/// the role of |psi_j^(1)>: V_l = V_1 * swap(1, l).
UnitaryEnsemble v_family_from_basis(const UnitaryOperator& v1);

/// 2d unitaries: W_k maps |i> to |phi_{i+k-1}> (indices mod d), W_{d+k} is
/// W_k with its first column negated. |phi_i> is the computational basis.
UnitaryEnsemble w_family(int d);
/// As w_family with |phi_i> the i-th column of `phi`.
UnitaryEnsemble w_family_from_basis(const UnitaryOperator& phi);

/// The qutrit sets {T1, T2} and {T1, T3}: T1 = I, T2 = diag(1, w, w^2) with
/// w = e^{2 pi i / 3}, T3 = diag(1, 1, -1).
std::pair<UnitaryEnsemble, UnitaryEnsemble> t_trio();

/// {I, swap(1,2)} in dimension d: two unitaries sharing every column except
/// the first two, which are exchanged.
UnitaryEnsemble swapped_pair(int d);

/// (1/sqrt d) sum_l |ll>.
ProbeSpec probe_max_entangled(int d);

/// Rank-2 probe sum_t (a_t |1> + b sum_{s>=2} |s>) |t> with b_t = b for all t,
/// a_t = 0 for t >= 2 and a_1 = -d (d-2) b / 2, which zeroes every pairwise
/// overlap of the evolved v_family states.
ProbeSpec probe_v_family(int d);

/// (1/sqrt 2)|11> + sum_{i>=2} (2(d-1))^{-1/2} |ii>.
ProbeSpec probe_w_family(int d);

/// |index> (x) |1> on C^d (x) C^d, index 0-based.
ProbeSpec probe_basis_product(int d, int index);

/// (U_x (x) I)|probe> for every member.
std::vector<ComplexVector> evolved_kets(const UnitaryEnsemble& e,
                                        const ProbeSpec& probe);

/// Evolved ensemble with the ensemble's priors. For product probes the
/// ancilla factors out and the states live on C^d alone.
StateEnsemble evolve(const UnitaryEnsemble& e, const ProbeSpec& probe);

/// G(i,j) = <k_i|k_j>.
ComplexMatrix gram_matrix(const std::vector<ComplexVector>& kets);

/// Looks up a built-in ensemble by name: "v:D", "w:D", "swapped:D",
/// "ttrio" (= "ttrio:1", the set {T1,T2}) or "ttrio:2" ({T1,T3}).
UnitaryEnsemble builtin_ensemble(std::string_view name);

/// The constructed probe that goes with a built-in family, if it has one:
/// probe_v_family for "v:D", probe_w_family for "w:D", and
/// (|11> + |22>)/sqrt 2 for "swapped:D".
std::optional<ProbeSpec> builtin_probe(std::string_view name);

}  // namespace uniprobe
