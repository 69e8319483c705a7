#include "uniprobe/families.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "uniprobe/error.hpp"

namespace uniprobe {

UnitaryEnsemble::UnitaryEnsemble(std::vector<UnitaryOperator> unitaries,
                                 std::vector<double> priors)
    : unitaries_(std::move(unitaries)), priors_(std::move(priors)) {
  if (unitaries_.empty()) throw InvariantViolation("UnitaryEnsemble: empty");
  if (unitaries_.size() != priors_.size()) {
    throw DimensionMismatch(
        "UnitaryEnsemble: unitaries and priors differ in size");
  }
  const int d = unitaries_.front().dim();
  double total = 0.0;
  for (std::size_t x = 0; x < unitaries_.size(); ++x) {
    if (unitaries_[x].dim() != d) {
      throw DimensionMismatch("UnitaryEnsemble: unitaries of different size");
    }
    if (!(priors_[x] > 0.0)) {
      throw InvariantViolation("UnitaryEnsemble: priors must be positive");
    }
    total += priors_[x];
  }
  if (std::abs(total - 1.0) > StateEnsemble::kPriorTol) {
    std::ostringstream os;
    os << "UnitaryEnsemble: priors sum to " << total;
    throw InvariantViolation(os.str());
  }
}

UnitaryEnsemble UnitaryEnsemble::uniform(
    std::vector<UnitaryOperator> unitaries) {
  const std::size_t n = unitaries.size();
  return UnitaryEnsemble(std::move(unitaries),
                         std::vector<double>(n, n ? 1.0 / n : 0.0));
}

std::string_view to_string(ProbeClass c) {
  switch (c) {
    case ProbeClass::product:
      return "product";
    case ProbeClass::maxEntangled:
      return "maxent";
    case ProbeClass::arbitraryPure:
      return "arbitrary";
  }
  return "?";
}

ProbeClass parse_probe_class(std::string_view name) {
  if (name == "product") return ProbeClass::product;
  if (name == "maxent" || name == "maxEntangled") return ProbeClass::maxEntangled;
  if (name == "arbitrary" || name == "arbitraryPure")
    return ProbeClass::arbitraryPure;
  throw InvalidArgument("unknown probe class '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

namespace {

bool is_max_entangled(const SchmidtDecomposition& s, int dimA, int dimB) {
  if (dimA != dimB) return false;
  const double target = 1.0 / std::sqrt(static_cast<double>(dimA));
  for (double c : s.coefficients)
    if (std::abs(c - target) > ProbeSpec::kMaxEntTol) return false;
  return true;
}

ProbeClass tag_for(const SchmidtDecomposition& s, int dimA, int dimB) {
  if (s.rank(ProbeSpec::kRankCutoff) <= 1) return ProbeClass::product;
  if (is_max_entangled(s, dimA, dimB)) return ProbeClass::maxEntangled;
  return ProbeClass::arbitraryPure;
}

void require_min_dim(int d, int lo, const char* what) {
  if (d < lo) {
    std::ostringstream os;
    os << what << ": requires d >= " << lo << ", got " << d;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

ProbeSpec::ProbeSpec(PureState state, ProbeClass tag)
    : state_(std::move(state)), tag_(tag), schmidt_(uniprobe::schmidt(state_)) {
  const ProbeClass actual = tag_for(schmidt_, state_.dimA(), state_.dimB());
  // A one-dimensional system is both product and maximally entangled.
  const bool trivial = state_.dimA() == 1 || state_.dimB() == 1;
  if (tag_ != actual && !(trivial && tag_ != ProbeClass::arbitraryPure)) {
    std::ostringstream os;
    os << "ProbeSpec: tag '" << to_string(tag_)
       << "' does not match Schmidt data (looks " << to_string(actual)
       << ", rank " << schmidt_.rank(kRankCutoff) << ")";
    throw InvariantViolation(os.str());
  }
}

ProbeSpec ProbeSpec::classify(PureState state) {
  const SchmidtDecomposition s = uniprobe::schmidt(state);
  const ProbeClass tag = tag_for(s, state.dimA(), state.dimB());
  return ProbeSpec(std::move(state), tag);
}

// ---------------------------------------------------------------------------

UnitaryEnsemble v_family(int d) {
  require_min_dim(d, 3, "v_family");
  return v_family_from_basis(UnitaryOperator::identity(d));
}

UnitaryEnsemble v_family_from_basis(const UnitaryOperator& v1) {
  const int d = v1.dim();
  require_min_dim(d, 3, "v_family_from_basis");
  std::vector<UnitaryOperator> members;
  members.push_back(v1);
  for (int l = 1; l < d; ++l)
    members.emplace_back(v1.matrix() * transposition(d, 0, l));
  return UnitaryEnsemble::uniform(std::move(members));
}

UnitaryEnsemble w_family(int d) {
  require_min_dim(d, 3, "w_family");
  return w_family_from_basis(UnitaryOperator::identity(d));
}

UnitaryEnsemble w_family_from_basis(const UnitaryOperator& phi) {
  const int d = phi.dim();
  require_min_dim(d, 3, "w_family_from_basis");
  std::vector<UnitaryOperator> members;
  members.reserve(2 * static_cast<std::size_t>(d));
  std::vector<ComplexMatrix> shifts;
  for (int k = 0; k < d; ++k) {
    ComplexMatrix w(d, d);
    for (int i = 0; i < d; ++i) w.col(i) = phi.matrix().col((i + k) % d);
    shifts.push_back(std::move(w));
  }
  for (const auto& w : shifts) members.emplace_back(w);
  for (auto w : shifts) {
    w.col(0) *= -1.0;
    members.emplace_back(std::move(w));
  }
  return UnitaryEnsemble::uniform(std::move(members));
}

std::pair<UnitaryEnsemble, UnitaryEnsemble> t_trio() {
  const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
  ComplexMatrix t2 = ComplexMatrix::Zero(3, 3);
  t2.diagonal() << 1.0, w, w * w;
  ComplexMatrix t3 = ComplexMatrix::Identity(3, 3);
  t3(2, 2) = -1.0;
  const auto t1 = UnitaryOperator::identity(3);
  return {UnitaryEnsemble::uniform({t1, UnitaryOperator(t2)}),
          UnitaryEnsemble::uniform({t1, UnitaryOperator(t3)})};
}

UnitaryEnsemble swapped_pair(int d) {
  require_min_dim(d, 3, "swapped_pair");
  return UnitaryEnsemble::uniform(
      {UnitaryOperator::identity(d), UnitaryOperator(transposition(d, 0, 1))});
}

ProbeSpec probe_max_entangled(int d) {
  require_min_dim(d, 2, "probe_max_entangled");
  ComplexVector amps = ComplexVector::Zero(d * d);
  for (int l = 0; l < d; ++l) amps(l * d + l) = 1.0 / std::sqrt(double(d));
  return ProbeSpec(PureState(d, d, std::move(amps)), ProbeClass::maxEntangled);
}

ProbeSpec probe_v_family(int d) {
  require_min_dim(d, 3, "probe_v_family");
  const double dd = d;
  // |a_1|^2 + d (d-1) b^2 = 1 with a_1 = -d (d-2) b / 2.
  const double b =
      1.0 / std::sqrt(dd * (dd - 1) + dd * dd * (dd - 2) * (dd - 2) / 4.0);
  const double a1 = -dd * (dd - 2) * b / 2.0;
  ComplexVector amps = ComplexVector::Zero(d * d);
  for (int t = 0; t < d; ++t) {
    amps(0 * d + t) = t == 0 ? a1 : 0.0;
    for (int s = 1; s < d; ++s) amps(s * d + t) = b;
  }
  return ProbeSpec(PureState::normalized(d, d, std::move(amps)),
                   ProbeClass::arbitraryPure);
}

ProbeSpec probe_w_family(int d) {
  require_min_dim(d, 3, "probe_w_family");
  ComplexVector amps = ComplexVector::Zero(d * d);
  amps(0) = 1.0 / std::sqrt(2.0);
  for (int i = 1; i < d; ++i)
    amps(i * d + i) = 1.0 / std::sqrt(2.0 * (d - 1));
  return ProbeSpec(PureState::normalized(d, d, std::move(amps)),
                   ProbeClass::arbitraryPure);
}

ProbeSpec probe_basis_product(int d, int index) {
  if (index < 0 || index >= d) {
    throw InvalidArgument("probe_basis_product: index out of range");
  }
  ComplexVector a = ComplexVector::Zero(d);
  ComplexVector b = ComplexVector::Zero(d);
  a(index) = 1.0;
  b(0) = 1.0;
  return ProbeSpec(PureState::product(a, b), ProbeClass::product);
}

std::vector<ComplexVector> evolved_kets(const UnitaryEnsemble& e,
                                        const ProbeSpec& probe) {
  if (probe.dim() != e.dim()) {
    throw DimensionMismatch("evolved_kets: probe does not act on the unitaries");
  }
  std::vector<ComplexVector> out;
  out.reserve(e.size());
  for (const auto& u : e.unitaries())
    out.push_back(apply_local(u.matrix(), probe.state()));
  return out;
}

StateEnsemble evolve(const UnitaryEnsemble& e, const ProbeSpec& probe) {
  if (probe.dim() != e.dim()) {
    throw DimensionMismatch("evolve: probe does not act on the unitaries");
  }
  std::vector<DensityOperator> states;
  states.reserve(e.size());
  if (probe.tag() == ProbeClass::product) {
    const ComplexVector a = probe.schmidt().left.col(0);
    for (const auto& u : e.unitaries()) {
      ComplexVector k = u.matrix() * a;
      k.normalize();
      states.push_back(DensityOperator::from_ket(k));
    }
  } else {
    for (const auto& k : evolved_kets(e, probe))
      states.push_back(DensityOperator::from_ket(k));
  }
  return StateEnsemble(std::move(states), e.priors());
}

ComplexMatrix gram_matrix(const std::vector<ComplexVector>& kets) {
  const auto n = static_cast<Eigen::Index>(kets.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = kets[static_cast<std::size_t>(i)].dot(
          kets[static_cast<std::size_t>(j)]);
  return g;
}

// ---------------------------------------------------------------------------

namespace {

struct BuiltinName {
  std::string family;
  std::optional<int> param;
};

BuiltinName parse_builtin(std::string_view name) {
  BuiltinName out;
  const auto colon = name.find(':');
  out.family = std::string(name.substr(0, colon));
  if (colon != std::string_view::npos) {
    const auto digits = name.substr(colon + 1);
    int v = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InvalidArgument("builtin '" + std::string(name) +
                            "': parameter is not an integer");
    }
    out.param = v;
  }
  return out;
}

int need_param(const BuiltinName& b, std::string_view name) {
  if (!b.param) {
    throw InvalidArgument("builtin '" + std::string(name) +
                          "' needs a dimension, e.g. " + b.family + ":3");
  }
  return *b.param;
}

}  // namespace

UnitaryEnsemble builtin_ensemble(std::string_view name) {
  const BuiltinName b = parse_builtin(name);
  if (b.family == "v") return v_family(need_param(b, name));
  if (b.family == "w") return w_family(need_param(b, name));
  if (b.family == "swapped") return swapped_pair(need_param(b, name));
  if (b.family == "ttrio") {
    const int which = b.param.value_or(1);
    auto [first, second] = t_trio();
    if (which == 1) return first;
    if (which == 2) return second;
    throw InvalidArgument("builtin 'ttrio' selects set 1 or 2");
  }
  throw InvalidArgument("unknown builtin '" + std::string(name) +
                        "' (expected v:D, w:D, swapped:D, ttrio[:1|:2])");
}

std::optional<ProbeSpec> builtin_probe(std::string_view name) {
  const BuiltinName b = parse_builtin(name);
  if (b.family == "v") return probe_v_family(need_param(b, name));
  if (b.family == "w") return probe_w_family(need_param(b, name));
  if (b.family == "swapped") {
    const int d = need_param(b, name);
    require_min_dim(d, 3, "swapped_pair");
    ComplexVector amps = ComplexVector::Zero(d * d);
    amps(0) = amps(d + 1) = 1.0 / std::sqrt(2.0);
    return ProbeSpec(PureState(d, d, std::move(amps)),
                     ProbeClass::arbitraryPure);
  }
  return std::nullopt;
}

}  // namespace uniprobe
