#pragma once

// Random point configurations: homogeneous Poisson in a window, and the
// displaced lattice Z^d + iid ball displacements.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pointlab/configuration.hpp"
#include "pointlab/rng.hpp"

namespace pointlab {

namespace detail {

// Exact duplicates are measure zero but would violate the distinctness
// invariant; redraw offenders (by index) until the configuration is clean.
template <class Redraw>
inline void dedup_points(std::vector<Point>& pts, Redraw&& redraw) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<int> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return pts[i] < pts[j]; });
    bool clean = true;
    for (std::size_t k = 1; k < order.size(); ++k)
      if (pts[order[k]] == pts[order[k - 1]]) {
        pts[order[k]] = redraw(order[k]);
        clean = false;
      }
    if (clean) return;
  }
  throw std::runtime_error("sampling: could not separate coincident points");
}

inline void check_window(const Window& w, const char* who) {
  if (!std::isfinite(w.lo) || !std::isfinite(w.hi) || !(w.hi > w.lo))
    throw std::invalid_argument(std::string(who) + ": window must satisfy lo < hi");
}

inline constexpr double max_expected_points = 2e8;  // resource guard

}  // namespace detail

inline PointConfiguration sample_poisson(double intensity, const Window& window,
                                         int dim, std::uint64_t seed) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("sample_poisson: dimension must be 1, 2, or 3");
  detail::check_window(window, "sample_poisson");
  if (!std::isfinite(intensity) || intensity <= 0.0)
    throw std::invalid_argument("sample_poisson: intensity must be positive");
  const double mean = intensity * std::pow(window.side(), dim);
  if (mean > detail::max_expected_points)
    throw std::invalid_argument("sample_poisson: expected point count exceeds guard");

  RandomEngine rng(derive_seed(seed, 0));
  const long long count = rng.poisson(mean);

  PointConfiguration c;
  c.dim = dim;
  c.window = window;
  c.points.reserve(count);
  auto draw = [&](int) {
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) p[a] = rng.uniform(window.lo, window.hi);
    return p;
  };
  for (long long i = 0; i < count; ++i) c.points.push_back(draw(0));
  detail::dedup_points(c.points, draw);
  return c;
}

// Lattice sites Z^d displaced by iid uniform draws from the closed ball of
// radius `bound`; sites whose displaced position leaves the window are
// dropped.  bound = 0 degenerates to the exact lattice restriction.
inline PointConfiguration sample_displaced_lattice(double bound, const Window& window,
                                                   int dim, std::uint64_t seed) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("sample_displaced_lattice: dimension must be 1, 2, or 3");
  detail::check_window(window, "sample_displaced_lattice");
  if (!std::isfinite(bound) || bound < 0.0)
    throw std::invalid_argument(
        "sample_displaced_lattice: displacement bound must be nonnegative");

  const std::int64_t lo_site = static_cast<std::int64_t>(std::ceil(window.lo - bound));
  const std::int64_t hi_site = static_cast<std::int64_t>(std::floor(window.hi + bound));
  const double per_axis = static_cast<double>(hi_site - lo_site + 1);
  if (std::pow(per_axis, dim) > detail::max_expected_points)
    throw std::invalid_argument("sample_displaced_lattice: site count exceeds guard");

  RandomEngine rng(derive_seed(seed, 0));
  PointConfiguration c;
  c.dim = dim;
  c.window = window;

  std::int64_t site[3] = {lo_site, lo_site, lo_site};
  std::int64_t top[3] = {lo_site, lo_site, lo_site};
  for (int a = 0; a < dim; ++a) top[a] = hi_site;

  // lexicographic site order keeps the draw sequence deterministic
  for (site[0] = lo_site; site[0] <= top[0]; ++site[0])
    for (site[1] = lo_site; site[1] <= top[1]; ++site[1])
      for (site[2] = lo_site; site[2] <= top[2]; ++site[2]) {
        Point p{0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a) p[a] = static_cast<double>(site[a]);
        if (bound > 0.0) {
          const Point d = rng.in_ball(dim, bound);
          for (int a = 0; a < dim; ++a) p[a] += d[a];
        }
        bool inside = true;
        for (int a = 0; a < dim; ++a)
          if (p[a] < window.lo || p[a] > window.hi) inside = false;
        if (inside) c.points.push_back(p);
      }

  detail::dedup_points(c.points, [&](int i) {
    // displaced collisions are possible only with bound >= 1/2; re-displace
    // around the colliding point's own site until back inside the window
    Point site{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) site[a] = std::round(c.points[i][a]);
    for (;;) {
      Point p = site;
      const Point d = rng.in_ball(dim, bound);
      bool inside = true;
      for (int a = 0; a < dim; ++a) {
        p[a] += d[a];
        if (p[a] < window.lo || p[a] > window.hi) inside = false;
      }
      if (inside) return p;
    }
  });
  return c;
}

}  // namespace pointlab
