#pragma once

// Continuum (Boolean) percolation estimators.
//
// A trial samples a Poisson configuration in the box [-B/2, B/2]^d, adds a
// point at the origin, and asks whether the origin's cluster (balls of
// radius R, overlap rule |x - y| < 2R) reaches within 2R of the box
// boundary.
//
// Intensities are compared through a *coupled thinning*: points are drawn
// once at a cap intensity with iid uniform marks, and intensity lambda keeps
// the points with mark < lambda/cap.  For a fixed seed the crossing
// indicator is then monotone in lambda, which makes level bisection
// consistent.
//
// estimate_critical_density guards against the d = 1 degeneration: in one
// dimension every intensity is subcritical (lambda_c = infinity), yet any
// finite box still crosses once lambda ~ log(box).  A finite-size probe at
// boxes 2B and 4B detects the upward drift of the level-0.5 intensity and
// raises BracketingError instead of returning a sham estimate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "pointlab/configuration.hpp"
#include "pointlab/errors.hpp"
#include "pointlab/rng.hpp"

namespace pointlab {

struct CrossingEstimate {
  int dim = 0;
  double radius = 0.0;
  double intensity = 0.0;
  double box_size = 0.0;
  long long trials = 0;
  double crossing_prob = 0.0;
  double std_err = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

// relative drift threshold of the finite-size degeneration probe: in d = 2, 3
// the level-0.5 intensity moves by a few percent per box doubling near the
// threshold, in d = 1 it moves by ~log(2)/(2 R lambda), i.e. 10-20%
inline constexpr double degeneration_drift = 0.06;

// scratch buffers shared across the trials of one estimate
struct TrialWorkspace {
  std::vector<double> coords;     // kept points, dim-strided, origin first
  std::vector<int> cell_of;       // flat cell index per point
  std::vector<int> cell_start;    // counting-sort offsets, ncells + 1
  std::vector<int> cursor;        // scatter cursors for the sort
  std::vector<int> by_cell;       // point indices grouped by cell
  std::vector<std::uint8_t> seen; // BFS mark per point
  std::vector<int> stack;
};

// One crossing trial: Poisson sample at the cap intensity thinned to
// `intensity`, BFS over a dense cell grid outward from the origin point,
// stopping as soon as the origin cluster reaches within 2R of the boundary.
inline bool crossing_trial(int dim, double intensity, double cap, double radius,
                           double box, std::uint64_t seed, TrialWorkspace& ws) {
  RandomEngine rng(seed);
  const double half = 0.5 * box;
  const double reach = half - 2.0 * radius;
  const long long count = rng.poisson(cap * std::pow(box, dim));
  const double keep = intensity / cap;

  auto& xs = ws.coords;
  xs.clear();
  for (int a = 0; a < dim; ++a) xs.push_back(0.0);
  for (long long i = 0; i < count; ++i) {
    double c[3];
    for (int a = 0; a < dim; ++a) c[a] = rng.uniform(-half, half);
    if (rng.uniform() < keep)
      for (int a = 0; a < dim; ++a) xs.push_back(c[a]);
  }
  const int n = static_cast<int>(xs.size() / dim);

  // cell edge >= 2R so neighbors live in the 3^dim surrounding cells; cap the
  // cell count so pathological box/R ratios degrade to coarser cells, not OOM
  const int side_cap = dim == 1 ? 1 << 26 : dim == 2 ? 7000 : 360;
  const int side = std::min(
      side_cap, std::max(1, static_cast<int>(std::floor(box / (2.0 * radius)))));
  const double edge = box / side;
  int ncells = side;
  for (int a = 1; a < dim; ++a) ncells *= side;

  auto cell_coord = [&](double x) {
    int c = static_cast<int>((x + half) / edge);
    return std::min(side - 1, std::max(0, c));
  };

  ws.cell_of.resize(n);
  ws.cell_start.assign(ncells + 1, 0);
  for (int i = 0; i < n; ++i) {
    int flat = 0;
    for (int a = dim - 1; a >= 0; --a) flat = flat * side + cell_coord(xs[i * dim + a]);
    ws.cell_of[i] = flat;
    ++ws.cell_start[flat + 1];
  }
  for (int c = 0; c < ncells; ++c) ws.cell_start[c + 1] += ws.cell_start[c];
  ws.cursor.assign(ws.cell_start.begin(), ws.cell_start.end() - 1);
  ws.by_cell.resize(n);
  for (int i = 0; i < n; ++i) ws.by_cell[ws.cursor[ws.cell_of[i]]++] = i;

  ws.seen.assign(n, 0);
  ws.stack.clear();
  ws.stack.push_back(0);
  ws.seen[0] = 1;
  const double rr = 4.0 * radius * radius;

  while (!ws.stack.empty()) {
    const int i = ws.stack.back();
    ws.stack.pop_back();
    double extent = 0.0;
    for (int a = 0; a < dim; ++a)
      extent = std::max(extent, std::abs(xs[i * dim + a]));
    if (extent >= reach) return true;

    int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int a = 0; a < dim; ++a) {
      const int c = cell_coord(xs[i * dim + a]);
      lo[a] = std::max(0, c - 1);
      hi[a] = std::min(side - 1, c + 1);
    }
    for (int z = lo[2]; z <= hi[2]; ++z)
      for (int y = lo[1]; y <= hi[1]; ++y)
        for (int x = lo[0]; x <= hi[0]; ++x) {
          int flat = x;
          if (dim > 1) flat += side * y;
          if (dim > 2) flat += side * side * z;
          for (int t = ws.cell_start[flat]; t < ws.cell_start[flat + 1]; ++t) {
            const int j = ws.by_cell[t];
            if (ws.seen[j]) continue;
            double d2 = 0.0;
            for (int a = 0; a < dim; ++a) {
              const double dxa = xs[i * dim + a] - xs[j * dim + a];
              d2 += dxa * dxa;
            }
            if (d2 < rr) {
              ws.seen[j] = 1;
              ws.stack.push_back(j);
            }
          }
        }
  }
  return false;
}

}  // namespace detail

// Monte Carlo estimate of the crossing probability at the given intensity.
// cap_intensity <= 0 means "cap = intensity" (no thinning).
inline CrossingEstimate crossing_probability(int dim, double intensity, double radius,
                                             double box_size, long long trials,
                                             std::uint64_t seed,
                                             double cap_intensity = 0.0) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("crossing_probability: dimension must be 1, 2, or 3");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("crossing_probability: radius must be positive");
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw std::invalid_argument("crossing_probability: intensity must be positive");
  if (!(box_size > 4.0 * radius) || !std::isfinite(box_size))
    throw std::invalid_argument(
        "crossing_probability: box_size must exceed 4 * radius");
  if (trials < 1) throw std::invalid_argument("crossing_probability: trials must be >= 1");
  double cap = (cap_intensity <= 0.0) ? intensity : cap_intensity;
  if (cap < intensity)
    throw std::invalid_argument("crossing_probability: cap intensity below intensity");
  if (cap * std::pow(box_size, dim) > 2e8)
    throw std::invalid_argument("crossing_probability: expected point count exceeds guard");

  long long crossings = 0;
  detail::TrialWorkspace scratch;
  for (long long t = 0; t < trials; ++t)
    if (detail::crossing_trial(dim, intensity, cap, radius, box_size,
                               derive_seed(seed, static_cast<std::uint64_t>(t)), scratch))
      ++crossings;

  CrossingEstimate est;
  est.dim = dim;
  est.radius = radius;
  est.intensity = intensity;
  est.box_size = box_size;
  est.trials = trials;
  est.seed = seed;
  est.crossing_prob = static_cast<double>(crossings) / trials;
  est.std_err = std::sqrt(est.crossing_prob * (1.0 - est.crossing_prob) / trials);
  return est;
}

struct CriticalDensityEstimate {
  int dim = 0;
  double radius = 0.0;
  double box_size = 0.0;
  long long trials = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  double lambda_hat = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<CrossingEstimate> probes;  // every Monte Carlo probe, in order
};

namespace detail {

struct LevelResult {
  double lambda = 0.0, lo = 0.0, hi = 0.0;
};

// Intensity at which the crossing probability passes 1/2 on the given box,
// by bisection of the coupled (shared seed, shared cap) estimator.
inline LevelResult level_bisection(int dim, double radius, double box, long long trials,
                                   double tol, std::uint64_t probe_seed, double lo,
                                   double hi, double ladder_top,
                                   std::vector<CrossingEstimate>* log) {
  auto probe = [&](double lambda, double cap) {
    auto est = crossing_probability(dim, lambda, radius, box, trials, probe_seed, cap);
    if (log) log->push_back(est);
    return est.crossing_prob;
  };

  while (probe(hi, hi) < 0.5) {
    lo = hi;
    hi *= 2.0;
    if (hi > ladder_top * (1.0 + 1e-12))
      throw BracketingError(
          "no upper bracket: crossing probability stays below 1/2 up to intensity " +
          std::to_string(hi / 2.0) + " on box " + std::to_string(box));
  }
  const double cap = hi;
  int shrink = 0;
  while (probe(lo, cap) >= 0.5) {
    hi = lo;
    lo *= 0.5;
    if (++shrink > 40)
      throw BracketingError("no lower bracket: crossing probability exceeds 1/2 down to intensity " +
                            std::to_string(lo));
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid, cap) >= 0.5)
      hi = mid;
    else
      lo = mid;
  }
  return {0.5 * (lo + hi), lo, hi};
}

}  // namespace detail

inline CriticalDensityEstimate estimate_critical_density(int dim, double radius,
                                                         double box_size,
                                                         long long trials, double tol,
                                                         std::uint64_t seed) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("estimate_critical_density: dimension must be 1, 2, or 3");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("estimate_critical_density: radius must be positive");
  if (!(box_size >= 20.0 * radius))
    throw std::invalid_argument("estimate_critical_density: box_size must be >= 20 * radius");
  if (trials < 50)
    throw std::invalid_argument("estimate_critical_density: need at least 50 trials");
  if (!(tol > 0.0))
    throw std::invalid_argument("estimate_critical_density: tol must be positive");

  CriticalDensityEstimate out;
  out.dim = dim;
  out.radius = radius;
  out.box_size = box_size;
  out.trials = trials;
  out.tol = tol;
  out.seed = seed;

  // dyadic ladder 2^k R^-d, k = -10 .. 10, until the crossing level is passed
  const double unit = std::pow(radius, -dim);
  const double ladder_top = std::pow(2.0, 10) * unit;
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (int k = -10; k <= 10; ++k) {
    const double lambda = std::pow(2.0, k) * unit;
    const auto est = crossing_probability(dim, lambda, radius, box_size, trials,
                                          derive_seed(seed, 100 + k), 0.0);
    out.probes.push_back(est);
    if (est.crossing_prob >= 0.5) {
      hi = lambda;
      lo = 0.5 * lambda;
      bracketed = true;
      break;
    }
  }
  if (!bracketed)
    throw BracketingError(
        "no upper bracket: crossing probability stays below 1/2 on the whole "
        "intensity ladder up to 2^10 R^-d");

  const auto main_level =
      detail::level_bisection(dim, radius, box_size, trials, tol,
                              derive_seed(seed, 200), lo, hi, ladder_top, &out.probes);

  // finite-size degeneration probe: the level-0.5 intensity must stop moving
  // as the box grows, otherwise no finite critical intensity is being seen
  const long long probe_trials = std::max<long long>(trials / 4, 200);
  const double probe_tol = std::max(tol, 0.02 * main_level.lambda);
  double drift_lambda[2] = {0.0, 0.0};
  for (int m = 0; m < 2; ++m) {
    const double big_box = box_size * std::pow(2.0, m + 1);
    const auto level = detail::level_bisection(
        dim, radius, big_box, probe_trials, probe_tol, derive_seed(seed, 300 + m),
        0.9 * main_level.lambda, 1.5 * main_level.lambda, ladder_top, &out.probes);
    drift_lambda[m] = level.lambda;
  }
  const double drift = drift_lambda[1] - drift_lambda[0];
  if (drift > 2.0 * probe_tol &&
      drift > detail::degeneration_drift * drift_lambda[0]) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.1f", 100.0 * drift / drift_lambda[0]);
    throw BracketingError(
        "critical intensity does not stabilize with box size (level-0.5 intensity "
        "drifts +" + std::string(pct) + "% per box doubling); consistent with "
        "lambda_c = infinity");
  }

  out.lambda_hat = main_level.lambda;
  out.bracket_lo = main_level.lo;
  out.bracket_hi = main_level.hi;
  return out;
}

struct ScalingEntry {
  double radius = 0.0;
  double lambda_hat = 0.0;
  double scaled = 0.0;  // lambda_hat * R^d
};

struct ScalingReport {
  int dim = 0;
  std::vector<ScalingEntry> entries;
  std::vector<CriticalDensityEstimate> estimates;
  double max_pairwise_rel_dev = 0.0;  // of the scaled values
};

// Scale covariance of the critical intensity: lambda_c(R) * R^d should be a
// constant across radii.  All estimator settings are rescaled with R (box
// box_scale * R, tolerance tol_scale * R^-d); otherwise the comparison would
// mix level-0.5 readings taken at different box/R ratios, i.e. different
// finite-size biases, and measure those instead of the scaling law.
inline ScalingReport verify_scaling(int dim, const std::vector<double>& radii,
                                    double box_scale, long long trials,
                                    double tol_scale, std::uint64_t seed) {
  if (radii.empty()) throw std::invalid_argument("verify_scaling: no radii given");
  ScalingReport report;
  report.dim = dim;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double tol = tol_scale * std::pow(r, -dim);
    auto est = estimate_critical_density(dim, r, box_scale * r, trials, tol,
                                         derive_seed(seed, 7000 + i));
    report.entries.push_back({r, est.lambda_hat, est.lambda_hat * std::pow(r, dim)});
    report.estimates.push_back(std::move(est));
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i)
    for (std::size_t j = i + 1; j < report.entries.size(); ++j) {
      const double a = report.entries[i].scaled, b = report.entries[j].scaled;
      const double dev = std::abs(a - b) / (0.5 * (a + b));
      report.max_pairwise_rel_dev = std::max(report.max_pairwise_rel_dev, dev);
    }
  return report;
}

}  // namespace pointlab
