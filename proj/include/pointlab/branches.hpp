#pragma once

// Two-point thresholds and eigenvalue branches over a grid of spacings.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pointlab/solver.hpp"

namespace pointlab {

// Spacing at which the two-point spectrum changes character:
//   d = 1 (alpha < 0): second negative eigenvalue appears at L = -2/alpha
//   d = 2 (any alpha): second negative eigenvalue appears at L = e^{2 pi alpha}
//   d = 3, alpha < 0 : second negative eigenvalue appears at L = -1/(4 pi alpha)
//   d = 3, alpha >= 0: the single negative eigenvalue *disappears* at
//                      L = 1/(4 pi alpha); alpha = 0 maps to +infinity
inline double two_point_threshold(int dim, double alpha) {
  if (!std::isfinite(alpha))
    throw std::invalid_argument("two_point_threshold: alpha must be finite");
  constexpr double four_pi = 4.0 * std::numbers::pi;
  switch (dim) {
    case 1:
      if (alpha >= 0.0)
        throw std::invalid_argument(
            "two_point_threshold: d=1 has negative spectrum only for alpha < 0");
      return -2.0 / alpha;
    case 2:
      return std::exp(2.0 * std::numbers::pi * alpha);
    case 3:
      if (alpha < 0.0) return 1.0 / (-four_pi * alpha);
      if (alpha == 0.0) return std::numeric_limits<double>::infinity();
      return 1.0 / (four_pi * alpha);
    default:
      throw std::invalid_argument("two_point_threshold: dimension must be 1, 2, or 3");
  }
}

inline SpectralProblem two_point_problem(int dim, double alpha, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw std::invalid_argument("two_point_problem: spacing must be positive");
  SpectralProblem p;
  p.config.dim = dim;
  p.config.window = {-1.0, spacing + 1.0};
  p.config.points = {{0.0, 0.0, 0.0}, {spacing, 0.0, 0.0}};
  p.couplings = {alpha, alpha};
  return p;
}

// d = 1 family: centres L * x_j for a fixed base pattern x_j
inline SpectralProblem scaled_points_problem(const std::vector<double>& base,
                                             double alpha, double scale) {
  if (base.size() < 1)
    throw std::invalid_argument("scaled_points_problem: base pattern is empty");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("scaled_points_problem: scale must be positive");
  SpectralProblem p;
  p.config.dim = 1;
  double lo = base.front() * scale, hi = lo;
  for (double x : base) {
    lo = std::min(lo, x * scale);
    hi = std::max(hi, x * scale);
  }
  p.config.window = {lo - 1.0, hi + 1.0};
  for (double x : base) p.config.points.push_back({x * scale, 0.0, 0.0});
  p.couplings.assign(base.size(), alpha);
  return p;
}

inline SpectralProblem equally_spaced_problem(int n, double alpha, double spacing) {
  if (n < 1) throw std::invalid_argument("equally_spaced_problem: need n >= 1");
  std::vector<double> base(n);
  for (int j = 0; j < n; ++j) base[j] = static_cast<double>(j);
  return scaled_points_problem(base, alpha, spacing);
}

struct EigenvalueBranch {
  int index = 0;               // 0 = lowest eigenvalue
  std::vector<double> L;       // spacings where this branch exists
  std::vector<double> E;       // parallel eigenvalues
};

struct BranchCurve {
  int dim = 0;
  double alpha = 0.0;
  std::vector<double> L_grid;
  std::vector<EigenvalueBranch> branches;
  std::vector<double> failed_L;  // grid points where the solver failed to converge
};

// Negative eigenvalues along a spacing grid.  base drives the d = 1 family
// ({L*x_j}); for d = 2, 3 it is ignored and the two-point geometry is used.
inline BranchCurve branch_curve(int dim, double alpha, const std::vector<double>& base,
                                const std::vector<double>& L_grid, double tol = 1e-12) {
  if (L_grid.empty())
    throw std::invalid_argument("branch_curve: spacing grid is empty");
  for (std::size_t i = 0; i < L_grid.size(); ++i) {
    if (!(L_grid[i] > 0.0) || !std::isfinite(L_grid[i]))
      throw std::invalid_argument("branch_curve: spacings must be positive");
    if (i > 0 && L_grid[i] <= L_grid[i - 1])
      throw std::invalid_argument("branch_curve: spacing grid must be strictly increasing");
  }

  BranchCurve curve;
  curve.dim = dim;
  curve.alpha = alpha;
  curve.L_grid = L_grid;
  for (double L : L_grid) {
    SpectralProblem p = (dim == 1 && base.size() >= 1)
                            ? scaled_points_problem(base, alpha, L)
                            : two_point_problem(dim, alpha, L);
    NegativeSpectrum ns;
    try {
      ns = negative_spectrum(p, tol);
    } catch (const ConvergenceError&) {
      curve.failed_L.push_back(L);
      continue;
    }
    for (std::size_t j = 0; j < ns.eigenvalues.size(); ++j) {
      if (curve.branches.size() <= j) {
        curve.branches.push_back({static_cast<int>(j), {}, {}});
      }
      curve.branches[j].L.push_back(L);
      curve.branches[j].E.push_back(ns.eigenvalues[j]);
    }
  }
  return curve;
}

}  // namespace pointlab
