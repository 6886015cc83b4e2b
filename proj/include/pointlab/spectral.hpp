#pragma once

// The characteristic matrix M(s) of a finite point-interaction Hamiltonian.
// Negative eigenvalues E = -s^2 of the operator correspond to s > 0 with
// det M(s) = 0.  Entries by dimension (r = |x_j - x_k|, couplings alpha_j):
//
//   d = 1:  diag -1/alpha_j - 1/(2s)          off  -exp(-s r)/(2s)
//   d = 2:  diag alpha_j + (g + log(s/2))/2pi off  -K0(s r)/2pi
//   d = 3:  diag alpha_j + s/(4pi)            off  -exp(-s r)/(4pi r)
//
// In d = 1 the coupling enters reciprocally, so alpha_j = 0 means a free
// (transparent) point; such centres are rejected here and dropped by the
// solver before it builds matrices.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pointlab/configuration.hpp"
#include "pointlab/matrix.hpp"
#include "pointlab/specfun.hpp"

namespace pointlab {

// closer centres than this are treated as coincident and rejected
inline constexpr double min_point_separation = 1e-9;

struct SpectralProblem {
  PointConfiguration config;
  CouplingSequence couplings;

  int dim() const { return config.dim; }
  std::size_t size() const { return config.points.size(); }
};

inline void validate(const SpectralProblem& p) {
  validate(p.config);
  if (p.couplings.size() != p.config.points.size())
    throw std::invalid_argument("SpectralProblem: one coupling per point required");
  if (p.config.points.empty())
    throw std::invalid_argument("SpectralProblem: at least one point required");
  for (double a : p.couplings)
    if (!std::isfinite(a))
      throw std::invalid_argument("SpectralProblem: couplings must be finite");
  const auto d_star = min_pairwise_distance(p.config);
  if (d_star && *d_star <= min_point_separation)
    throw std::invalid_argument("SpectralProblem: centres closer than 1e-9 are not supported");
}

struct CharacteristicMatrix {
  int dim = 0;
  double s = 0.0;
  SymMatrix m;
};

namespace detail {

inline SymMatrix fill_characteristic(const SpectralProblem& p, double s) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr double four_pi = 4.0 * std::numbers::pi;
  const int n = static_cast<int>(p.size());
  SymMatrix m(n);
  const auto& pts = p.config.points;
  switch (p.dim()) {
    case 1:
      for (int j = 0; j < n; ++j) {
        m.at(j, j) = -1.0 / p.couplings[j] - 1.0 / (2.0 * s);
        for (int k = j + 1; k < n; ++k) {
          const double v = -std::exp(-s * dist(pts[j], pts[k])) / (2.0 * s);
          m.at(j, k) = v;
          m.at(k, j) = v;
        }
      }
      break;
    case 2:
      for (int j = 0; j < n; ++j) {
        m.at(j, j) = p.couplings[j] + (euler_gamma + std::log(0.5 * s)) / two_pi;
        for (int k = j + 1; k < n; ++k) {
          const double z = s * dist(pts[j], pts[k]);
          const double v = -(z > bessel_underflow_z ? 0.0 : bessel_k0(z)) / two_pi;
          m.at(j, k) = v;
          m.at(k, j) = v;
        }
      }
      break;
    case 3:
      for (int j = 0; j < n; ++j) {
        m.at(j, j) = p.couplings[j] + s / four_pi;
        for (int k = j + 1; k < n; ++k) {
          const double r = dist(pts[j], pts[k]);
          const double v = -std::exp(-s * r) / (four_pi * r);
          m.at(j, k) = v;
          m.at(k, j) = v;
        }
      }
      break;
    default:
      throw std::invalid_argument("fill_characteristic: dimension must be 1, 2, or 3");
  }
  return m;
}

}  // namespace detail

inline CharacteristicMatrix build_matrix(const SpectralProblem& p, double s) {
  validate(p);
  if (!std::isfinite(s) || s <= 0.0)
    throw std::invalid_argument("build_matrix: s must be a positive real");
  if (p.dim() == 1)
    for (double a : p.couplings)
      if (a == 0.0)
        throw std::invalid_argument(
            "build_matrix: d=1 couplings must be nonzero (alpha = 0 is a free point)");
  return {p.dim(), s, detail::fill_characteristic(p, s)};
}

}  // namespace pointlab
