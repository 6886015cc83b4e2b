#pragma once

// Point configurations in a cubical window, plus the exact geometric
// queries the rest of the project builds on: minimal pairwise separation
// (d_*) and the local count bound sup_x #(points in a ball of radius 2r).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pointlab/errors.hpp"

namespace pointlab {

// Coordinates beyond the active dimension stay exactly zero, so Euclidean
// distances can always be taken over all three slots.
using Point = std::array<double, 3>;

struct Window {
  double lo = 0.0;
  double hi = 0.0;  // the box [lo, hi]^d
  double side() const { return hi - lo; }
};

struct PointConfiguration {
  int dim = 0;
  Window window;
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
};

using CouplingSequence = std::vector<double>;

inline double sq_dist(const Point& a, const Point& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(sq_dist(a, b)); }

// distance from a point inside the window to the boundary of the cube
inline double boundary_distance(const Point& p, const Window& w, int dim) {
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k < dim; ++k) m = std::min({m, p[k] - w.lo, w.hi - p[k]});
  return m;
}

inline void validate(const PointConfiguration& c) {
  if (c.dim < 1 || c.dim > 3)
    throw std::invalid_argument("PointConfiguration: dimension must be 1, 2, or 3");
  if (!std::isfinite(c.window.lo) || !std::isfinite(c.window.hi) ||
      !(c.window.hi > c.window.lo))
    throw std::invalid_argument("PointConfiguration: window must satisfy lo < hi");
  for (const Point& p : c.points) {
    for (int k = 0; k < c.dim; ++k) {
      if (!std::isfinite(p[k]))
        throw std::invalid_argument("PointConfiguration: non-finite coordinate");
      if (p[k] < c.window.lo || p[k] > c.window.hi)
        throw std::invalid_argument("PointConfiguration: point outside window");
    }
    for (int k = c.dim; k < 3; ++k)
      if (p[k] != 0.0)
        throw std::invalid_argument(
            "PointConfiguration: coordinates beyond the dimension must be zero");
  }
  std::vector<Point> sorted = c.points;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw std::invalid_argument("PointConfiguration: coincident points");
}

namespace detail {

struct CellKey {
  std::int64_t c[3];
  bool operator==(const CellKey& o) const {
    return c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2];
  }
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (int i = 0; i < 3; ++i) {
      std::uint64_t z = static_cast<std::uint64_t>(k.c[i]) + h;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      h = z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
  }
};

// Uniform grid of cubical cells of the given edge; any two points within
// `edge` of each other sit in the same or adjacent cells.
class CellGrid {
 public:
  CellGrid(const std::vector<Point>& pts, int dim, double edge)
      : pts_(pts), dim_(dim), edge_(edge) {
    buckets_.reserve(pts.size());
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
      buckets_[key_of(pts_[i])].push_back(i);
  }

  template <class F>
  void for_neighborhood(int i, F&& f) const {
    const CellKey k0 = key_of(pts_[i]);
    int span[3] = {0, 0, 0};
    for (int a = 0; a < dim_; ++a) span[a] = 1;
    for (std::int64_t dx = -span[0]; dx <= span[0]; ++dx)
      for (std::int64_t dy = -span[1]; dy <= span[1]; ++dy)
        for (std::int64_t dz = -span[2]; dz <= span[2]; ++dz) {
          const CellKey k{{k0.c[0] + dx, k0.c[1] + dy, k0.c[2] + dz}};
          const auto it = buckets_.find(k);
          if (it == buckets_.end()) continue;
          for (int j : it->second)
            if (j != i) f(j);
        }
  }

 private:
  CellKey key_of(const Point& p) const {
    CellKey k{{0, 0, 0}};
    for (int a = 0; a < dim_; ++a)
      k.c[a] = static_cast<std::int64_t>(std::floor(p[a] / edge_));
    return k;
  }

  const std::vector<Point>& pts_;
  int dim_;
  double edge_;
  std::unordered_map<CellKey, std::vector<int>, CellKeyHash> buckets_;
};

struct UnionFind {
  std::vector<int> parent;
  std::vector<int> size;

  explicit UnionFind(int n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

// Root labels of the graph whose edges are the pairs with |x_i - x_j| <
// threshold (strict: balls of radius threshold/2 must overlap, not touch).
inline std::vector<int> component_labels(const std::vector<Point>& pts, int dim,
                                         double threshold) {
  UnionFind uf(static_cast<int>(pts.size()));
  CellGrid grid(pts, dim, threshold);
  const double t2 = threshold * threshold;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    grid.for_neighborhood(i, [&](int j) {
      if (j < i && sq_dist(pts[i], pts[j]) < t2) uf.unite(i, j);
    });
  std::vector<int> labels(pts.size());
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) labels[i] = uf.find(i);
  return labels;
}

}  // namespace detail

// d_*: the minimal pairwise separation.  Absent (nullopt) for fewer than two
// points.  Grid-accelerated: a candidate found within one cell edge of the
// scan is provably the global minimum; otherwise the grid is coarsened.
inline std::optional<double> min_pairwise_distance(const PointConfiguration& c) {
  const auto& pts = c.points;
  const int n = static_cast<int>(pts.size());
  if (n < 2) return std::nullopt;

  auto brute = [&](void) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) best = std::min(best, sq_dist(pts[i], pts[j]));
    return std::sqrt(best);
  };
  if (n <= 256) return brute();

  double edge = c.window.side() /
                std::max(1.0, std::floor(std::pow(static_cast<double>(n), 1.0 / c.dim)));
  for (;;) {
    detail::CellGrid grid(pts, c.dim, edge);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      grid.for_neighborhood(i, [&](int j) {
        if (j < i) best = std::min(best, sq_dist(pts[i], pts[j]));
      });
    best = std::sqrt(best);
    if (best <= edge || edge >= c.window.side()) return best;
    edge *= 2.0;
  }
}

// max over configuration points gamma of #(points within distance 2r of
// gamma, gamma itself included); balls are closed.
inline int local_count_bound(const PointConfiguration& c, double r) {
  if (!std::isfinite(r) || r <= 0.0)
    throw std::invalid_argument("local_count_bound: radius must be positive");
  if (c.points.empty()) return 0;
  const double reach = 2.0 * r;
  detail::CellGrid grid(c.points, c.dim, reach);
  const double reach2 = reach * reach;
  int best = 0;
  for (int i = 0; i < static_cast<int>(c.points.size()); ++i) {
    int count = 1;
    grid.for_neighborhood(i, [&](int j) {
      if (sq_dist(c.points[i], c.points[j]) <= reach2) ++count;
    });
    best = std::max(best, count);
  }
  return best;
}

}  // namespace pointlab
