#pragma once

// Connectivity clusters of a point configuration: two points are linked when
// the open balls of radius R around them overlap, i.e. |x - y| < 2R.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "pointlab/configuration.hpp"

namespace pointlab {

struct ClusterReport {
  double radius = 0.0;
  // index sets, each sorted ascending; components ordered by first element
  std::vector<std::vector<int>> components;
  // parallel to components: has a member within distance R of the window boundary
  std::vector<bool> touches_boundary;
  int max_component_size = 0;
};

inline ClusterReport clusters(const PointConfiguration& c, double radius) {
  if (!std::isfinite(radius) || radius <= 0.0)
    throw std::invalid_argument("clusters: radius must be positive");
  validate(c);

  ClusterReport report;
  report.radius = radius;
  if (c.points.empty()) return report;

  const std::vector<int> labels = detail::component_labels(c.points, c.dim, 2.0 * radius);
  std::map<int, std::vector<int>> by_root;  // ordered: roots are smallest members
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    by_root[labels[i]].push_back(i);

  std::vector<std::vector<int>> comps;
  comps.reserve(by_root.size());
  for (auto& [root, members] : by_root) comps.push_back(std::move(members));
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  for (auto& comp : comps) {
    bool touches = false;
    for (int i : comp)
      if (boundary_distance(c.points[i], c.window, c.dim) <= radius) {
        touches = true;
        break;
      }
    report.max_component_size =
        std::max(report.max_component_size, static_cast<int>(comp.size()));
    report.touches_boundary.push_back(touches);
    report.components.push_back(std::move(comp));
  }
  return report;
}

}  // namespace pointlab
