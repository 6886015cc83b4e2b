#pragma once

// Periodic one-dimensional point interactions (lattice constant L, coupling
// alpha): dispersion function and band structure.  E = k^2 > 0 lies in the
// spectrum iff |cos(kL) + alpha sin(kL)/(2k)| <= 1, and E = -s^2 < 0 iff
// |cosh(sL) + alpha sinh(sL)/(2s)| <= 1.  Both sides are one analytic
// function of E; across E = 0 it tends to 1 + alpha L / 2.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pointlab/errors.hpp"

namespace pointlab {

struct LatticeProblem {
  double spacing = 1.0;  // L > 0
  double alpha = 0.0;
};

inline void validate(const LatticeProblem& p) {
  if (!(p.spacing > 0.0) || !std::isfinite(p.spacing))
    throw std::invalid_argument("LatticeProblem: spacing must be positive");
  if (!std::isfinite(p.alpha))
    throw std::invalid_argument("LatticeProblem: alpha must be finite");
}

// f(E) = cos(kL) + alpha sin(kL)/(2k) continued analytically through E = 0.
// |E| < 1e-8 goes through the power series (elementwise in -E), which keeps
// the removable singularity of sin(kL)/k exact; deep E < 0 goes through
// explicit exponentials so the two cosh/sinh terms cannot cancel in the
// large-sL regime.  The value may overflow to +-inf for very negative E;
// callers test |f| <= 1, for which that is the right answer.
inline double dispersion(const LatticeProblem& p, double energy) {
  validate(p);
  if (!std::isfinite(energy))
    throw std::invalid_argument("dispersion: energy must be finite");
  const double L = p.spacing, a = p.alpha;

  if (std::abs(energy) < 1e-8) {
    // cos part: sum (-E)^m L^{2m} / (2m)!   sin part: sum (-E)^m L^{2m+1} / (2m+1)!
    const double u = -energy * L * L;
    const double c = 1.0 + u / 2.0 + u * u / 24.0 + u * u * u / 720.0;
    const double t = L * (1.0 + u / 6.0 + u * u / 120.0 + u * u * u / 5040.0);
    return c + 0.5 * a * t;
  }
  if (energy > 0.0) {
    const double k = std::sqrt(energy);
    return std::cos(k * L) + 0.5 * a * std::sin(k * L) / k;
  }
  const double s = std::sqrt(-energy);
  const double sl = s * L;
  if (sl < 30.0) return std::cosh(sl) + 0.5 * a * std::sinh(sl) / s;
  const double plus = 1.0 + 0.5 * a / s, minus = 1.0 - 0.5 * a / s;
  if (plus == 0.0) return 0.5 * std::exp(-sl) * minus;
  return 0.5 * (std::exp(sl) * plus + std::exp(-sl) * minus);
}

inline bool in_spectrum(const LatticeProblem& p, double energy) {
  return std::abs(dispersion(p, energy)) <= 1.0;
}

struct BandInterval {
  double lo = 0.0, hi = 0.0;
};

struct BandScan {
  std::vector<BandInterval> intervals;  // maximal closed subintervals with |f| <= 1
  std::vector<double> grid_energy;      // scan at the requested resolution
  std::vector<double> grid_dispersion;
  int resolution = 0;                   // requested resolution
  // true when the x4 refinement pass changed the interval count: some band or
  // gap is narrower than the requested grid
  bool resolution_warning = false;
};

namespace detail {

inline std::vector<BandInterval> scan_intervals(const LatticeProblem& p, double e_lo,
                                                double e_hi, int resolution,
                                                std::vector<double>* grid_e,
                                                std::vector<double>* grid_f) {
  const auto g = [&](double e) { return std::abs(dispersion(p, e)) - 1.0; };
  auto energy_at = [&](int i) {
    return e_lo + (e_hi - e_lo) * static_cast<double>(i) / (resolution - 1);
  };

  // bisect the band edge inside [a, b] to 1e-10 energy width
  auto edge = [&](double a, double b, bool inside_at_a) {
    for (int it = 0; it < 200 && (b - a) > 1e-10; ++it) {
      const double mid = 0.5 * (a + b);
      if ((g(mid) <= 0.0) == inside_at_a)
        a = mid;
      else
        b = mid;
    }
    return 0.5 * (a + b);
  };

  std::vector<BandInterval> bands;
  bool inside = g(e_lo) <= 0.0;
  double open_at = e_lo;
  double prev = e_lo;
  for (int i = 1; i < resolution; ++i) {
    const double e = energy_at(i);
    const bool now = g(e) <= 0.0;
    if (now != inside) {
      const double cross = edge(prev, e, inside);
      if (inside)
        bands.push_back({open_at, cross});
      else
        open_at = cross;
      inside = now;
    }
    prev = e;
    if (grid_e) {
      grid_e->push_back(e);
      grid_f->push_back(dispersion(p, e));
    }
  }
  if (inside) bands.push_back({open_at, e_hi});
  return bands;
}

}  // namespace detail

// Band intervals inside [e_lo, e_hi] from a uniform scan at `resolution`
// points, with one automatic x4 refinement pass; a count mismatch between
// the passes raises the resolution warning and the refined result is kept.
inline BandScan band_intervals(const LatticeProblem& p, double e_lo, double e_hi,
                               int resolution = 4096) {
  validate(p);
  if (!std::isfinite(e_lo) || !std::isfinite(e_hi) || !(e_hi > e_lo))
    throw std::invalid_argument("band_intervals: need a finite range with e_lo < e_hi");
  if (resolution < 8)
    throw std::invalid_argument("band_intervals: resolution must be at least 8");

  BandScan out;
  out.resolution = resolution;
  out.grid_energy.push_back(e_lo);
  out.grid_dispersion.push_back(dispersion(p, e_lo));
  const auto coarse = detail::scan_intervals(p, e_lo, e_hi, resolution,
                                             &out.grid_energy, &out.grid_dispersion);
  const auto fine =
      detail::scan_intervals(p, e_lo, e_hi, 4 * resolution, nullptr, nullptr);
  out.resolution_warning = coarse.size() != fine.size();
  out.intervals = fine;
  return out;
}

}  // namespace pointlab
