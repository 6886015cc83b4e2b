#pragma once

// Negative spectrum of a finite point-interaction Hamiltonian.
//
// The sorted eigenvalue branches of M(s) are continuous in s, and every
// negative operator eigenvalue E = -s^2 shows up as a zero crossing of one
// branch.  The solver scans a geometric s grid, bisects each branch crossing,
// then doubles the grid density until the root count is unchanged over two
// consecutive passes.
//
// Upper end of the scan:
//   d = 2, 3: the diagonal grows without bound in s, so s_max is doubled
//             until M(s_max) is positive definite; no roots lie beyond.
//   d = 1   : the diagonal tends to the constant -1/alpha_j and positive
//             definiteness never arrives when some alpha_j > 0.  Instead use
//             a norm bound: M(s) = -diag(1/alpha_j) - Mtilde/(2s) with
//             ||Mtilde|| <= N, so every root satisfies s <= N max|alpha_j|/2,
//             already below the starting s_max.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pointlab/errors.hpp"
#include "pointlab/spectral.hpp"

namespace pointlab {

struct NegativeSpectrum {
  std::vector<double> eigenvalues;  // ascending, E_j = -s_j^2
  std::vector<double> roots_s;      // parallel to eigenvalues (descending)
  double tol = 0.0;                 // bisection width met by each root bracket
  double s_max = 0.0;               // upper end of the scanned s range
  int refinements = 0;              // grid-doubling passes after the first scan
  std::vector<long long> root_count_trace;  // root count per pass
};

namespace detail {

inline constexpr double solver_s_min = 1e-8;
inline constexpr int solver_points_per_decade = 64;
inline constexpr int solver_max_refinements = 6;

inline std::vector<double> branch_values(const SpectralProblem& p, double s) {
  return jacobi_eigenvalues(fill_characteristic(p, s));
}

inline double starting_s_max(const SpectralProblem& p) {
  constexpr double four_pi = 4.0 * std::numbers::pi;
  const double n = static_cast<double>(p.size());
  double worst = 1.0;
  for (double a : p.couplings) {
    worst = std::max({worst, std::abs(a), four_pi * std::abs(a)});
    const double log_term = -2.0 * std::numbers::pi * a - euler_gamma;
    if (log_term < 690.0) worst = std::max(worst, 2.0 * std::exp(log_term));
    else
      throw std::invalid_argument(
          "negative_spectrum: coupling too negative for a representable scan range");
  }
  return 1.0 + n * worst;
}

// bisect the k-th sorted eigenvalue branch over [a, b]; the sign of the
// branch differs at the endpoints
inline double bisect_branch(const SpectralProblem& p, int k, double a, double b,
                            bool neg_at_a, double tol) {
  for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
    const double mid = 0.5 * (a + b);
    const bool neg = branch_values(p, mid)[k] <= 0.0;
    if (neg == neg_at_a)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

// roots (values of s) found on one geometric grid pass
inline std::vector<double> scan_roots(const SpectralProblem& p, double s_lo,
                                      double s_hi, int points_per_decade, double tol) {
  const double decades = std::log10(s_hi / s_lo);
  const int m =
      std::max(3, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
  const int n = static_cast<int>(p.size());

  auto grid_s = [&](int i) {
    return s_lo * std::pow(s_hi / s_lo, static_cast<double>(i) / (m - 1));
  };

  std::vector<double> roots;
  std::vector<double> prev = branch_values(p, grid_s(0));
  for (int i = 1; i < m; ++i) {
    const double sa = grid_s(i - 1), sb = grid_s(i);
    std::vector<double> cur = branch_values(p, sb);
    bool any_change = false;
    for (int k = 0; k < n; ++k)
      if ((prev[k] <= 0.0) != (cur[k] <= 0.0)) any_change = true;

    if (any_change) {
      // probe interior nodes before bisecting: separates close crossings and
      // paired roots that fall inside one coarse interval
      constexpr int sub = 8;
      std::vector<double> nodes(sub + 1);
      std::vector<std::vector<double>> vals(sub + 1);
      for (int t = 0; t <= sub; ++t) {
        nodes[t] = sa * std::pow(sb / sa, static_cast<double>(t) / sub);
        vals[t] = (t == 0) ? prev : (t == sub ? cur : branch_values(p, nodes[t]));
      }
      for (int k = 0; k < n; ++k)
        for (int t = 0; t < sub; ++t) {
          const bool neg_a = vals[t][k] <= 0.0;
          if (neg_a != (vals[t + 1][k] <= 0.0))
            roots.push_back(bisect_branch(p, k, nodes[t], nodes[t + 1], neg_a, tol));
        }
    }
    prev = std::move(cur);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace detail

inline NegativeSpectrum negative_spectrum(const SpectralProblem& problem,
                                          double tol = 1e-12) {
  validate(problem);
  if (!std::isfinite(tol) || tol <= 0.0)
    throw std::invalid_argument("negative_spectrum: tol must be positive");

  // d = 1: alpha_j = 0 is a transparent point; drop it from the matrix
  SpectralProblem p = problem;
  if (p.dim() == 1) {
    PointConfiguration cfg;
    cfg.dim = p.config.dim;
    cfg.window = p.config.window;
    CouplingSequence alphas;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.couplings[j] != 0.0) {
        cfg.points.push_back(p.config.points[j]);
        alphas.push_back(p.couplings[j]);
      }
    p.config = std::move(cfg);
    p.couplings = std::move(alphas);
  }

  NegativeSpectrum out;
  out.tol = tol;
  if (p.size() == 0) return out;

  double s_hi = detail::starting_s_max(p);
  if (p.dim() >= 2) {
    int doublings = 0;
    while (detail::branch_values(p, s_hi)[0] <= 0.0) {
      s_hi *= 2.0;
      if (++doublings > 70)
        throw ConvergenceError(
            "negative_spectrum: M(s) not positive definite up to s = " +
            std::to_string(s_hi));
    }
  }
  const double s_lo = detail::solver_s_min;
  if (s_hi < 10.0 * s_lo) s_hi = 10.0 * s_lo;
  out.s_max = s_hi;

  std::vector<double> roots;
  for (int pass = 0; pass <= detail::solver_max_refinements; ++pass) {
    roots = detail::scan_roots(p, s_lo, s_hi,
                               detail::solver_points_per_decade << pass, tol);
    out.root_count_trace.push_back(static_cast<long long>(roots.size()));
    const std::size_t c = out.root_count_trace.size();
    if (c >= 3 && out.root_count_trace[c - 1] == out.root_count_trace[c - 2] &&
        out.root_count_trace[c - 2] == out.root_count_trace[c - 3]) {
      out.refinements = pass;
      out.roots_s = roots;
      for (double s : roots) out.eigenvalues.push_back(-s * s);
      return out;
    }
  }

  std::string trace;
  for (long long c : out.root_count_trace)
    trace += (trace.empty() ? "" : ", ") + std::to_string(c);
  throw ConvergenceError(
      "negative_spectrum: root count did not stabilize; counts per refinement: [" +
      trace + "]");
}

}  // namespace pointlab
