#include "uniprobe/hullgeom.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "uniprobe/error.hpp"

namespace uniprobe {

namespace {

// A candidate must beat the incumbent by this much to replace it, so that
// among (numerically) tied candidates the first one enumerated wins.
constexpr double kTieSlack = 1e-12;

double cross(Complex a, Complex b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

}  // namespace

PhasePointSet::PhasePointSet(std::vector<Complex> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw InvariantViolation("PhasePointSet: empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double r = std::abs(points_[i]);
    if (!std::isfinite(r) || std::abs(r - 1.0) > kModulusTol) {
      std::ostringstream os;
      os << "PhasePointSet: point " << i << " has modulus " << r;
      throw InvariantViolation(os.str());
    }
  }
}

PhasePointSet PhasePointSet::from_angles(const std::vector<double>& angles) {
  std::vector<Complex> pts;
  pts.reserve(angles.size());
  for (double a : angles) pts.push_back(std::polar(1.0, a));
  return PhasePointSet(std::move(pts));
}

HullResult min_hull_norm(const PhasePointSet& set) {
  const auto& z = set.points();
  const std::size_t n = z.size();

  HullResult best;
  best.minNorm = std::numeric_limits<double>::infinity();
  best.weights.assign(n, 0.0);

  auto offer = [&](double norm, Complex witness,
                   std::initializer_list<std::pair<std::size_t, double>> w) {
    if (!(norm < best.minNorm - kTieSlack)) return;
    best.minNorm = norm;
    best.witness = witness;
    std::fill(best.weights.begin(), best.weights.end(), 0.0);
    for (auto [idx, wt] : w) best.weights[idx] = wt;
  };

  // Vertices.
  for (std::size_t i = 0; i < n; ++i) offer(std::abs(z[i]), z[i], {{i, 1.0}});

  // Edges: project the origin onto each chord.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = z[j] - z[i];
      const double len2 = std::norm(v);
      if (len2 < 1e-24) continue;
      const double t = -(std::conj(v) * z[i]).real() / len2;
      if (t <= 0.0 || t >= 1.0) continue;  // endpoint, already a vertex
      const Complex w = z[i] + t * v;
      offer(std::abs(w), w, {{i, 1.0 - t}, {j, t}});
    }
  }

  // Triangles: only needed to put weights on an interior origin.
  if (best.minNorm > kTieSlack) {
    for (std::size_t i = 0; i < n && best.minNorm > kTieSlack; ++i) {
      for (std::size_t j = i + 1; j < n && best.minNorm > kTieSlack; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          const double area = cross(z[j] - z[i], z[k] - z[i]);
          if (std::abs(area) < 1e-14) continue;
          double li = cross(z[j], z[k]) / area;
          double lj = cross(z[k], z[i]) / area;
          double lk = cross(z[i], z[j]) / area;
          if (li < -kTieSlack || lj < -kTieSlack || lk < -kTieSlack) continue;
          li = std::max(li, 0.0);
          lj = std::max(lj, 0.0);
          lk = std::max(lk, 0.0);
          const double s = li + lj + lk;
          li /= s;
          lj /= s;
          lk /= s;
          const Complex w = li * z[i] + lj * z[j] + lk * z[k];
          offer(std::abs(w), w, {{i, li}, {j, lj}, {k, lk}});
          if (best.minNorm <= kTieSlack) break;
        }
      }
    }
  }
  return best;
}

bool origin_in_hull(const PhasePointSet& set, double tol) {
  return min_hull_norm(set).minNorm <= tol;
}

}  // namespace uniprobe
