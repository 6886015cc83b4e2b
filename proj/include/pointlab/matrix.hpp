#pragma once

// Small dense symmetric matrices and a cyclic Jacobi eigensolver.  The
// characteristic matrices this project diagonalizes are tiny (a handful of
// interaction centres), so quadratically convergent Jacobi sweeps are both
// simple and accurate: residuals come out near 1e-15 * ||M||.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pointlab/errors.hpp"

namespace pointlab {

struct SymMatrix {
  int n = 0;
  std::vector<double> a;  // row-major, n*n

  SymMatrix() = default;
  explicit SymMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {
    if (size <= 0) throw std::invalid_argument("SymMatrix: size must be positive");
  }

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  SymMatrix vectors;           // column j is the eigenvector of values[j]
};

namespace detail {

inline void require_symmetric(const SymMatrix& m, const char* who) {
  const double tol = 1e-12 * (1.0 + m.max_abs());
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      if (std::abs(m.at(i, j) - m.at(j, i)) > tol)
        throw std::invalid_argument(std::string(who) + ": matrix is not symmetric");
}

inline double off_diagonal_norm(const SymMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) s += m.at(i, j) * m.at(i, j);
  return std::sqrt(2.0 * s);
}

}  // namespace detail

inline EigenSystem jacobi_eigensystem(SymMatrix m, bool want_vectors = true) {
  detail::require_symmetric(m, "jacobi_eigensystem");
  const int n = m.n;
  SymMatrix v;
  if (want_vectors) {
    v = SymMatrix(n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;
  }

  const double scale = 1.0 + m.max_abs();
  const double off_target = 1e-15 * scale * n;
  constexpr int max_sweeps = 64;

  int sweep = 0;
  while (detail::off_diagonal_norm(m) > off_target) {
    if (++sweep > max_sweeps)
      throw ConvergenceError("jacobi_eigensystem: sweep budget exhausted");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::abs(apq) < 1e-18 * scale) continue;
        const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        m.at(p, p) -= t * apq;
        m.at(q, q) += t * apq;
        m.at(p, q) = 0.0;
        m.at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = m.at(r, p), arq = m.at(r, q);
          m.at(r, p) = arp - s * (arq + tau * arp);
          m.at(r, q) = arq + s * (arp - tau * arq);
          m.at(p, r) = m.at(r, p);
          m.at(q, r) = m.at(r, q);
        }
        if (want_vectors) {
          for (int r = 0; r < n; ++r) {
            const double vrp = v.at(r, p), vrq = v.at(r, q);
            v.at(r, p) = vrp - s * (vrq + tau * vrp);
            v.at(r, q) = vrq + s * (vrp - tau * vrq);
          }
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return m.at(i, i) < m.at(j, j); });

  EigenSystem out;
  out.values.resize(n);
  for (int j = 0; j < n; ++j) out.values[j] = m.at(order[j], order[j]);
  if (want_vectors) {
    out.vectors = SymMatrix(n);
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r) out.vectors.at(r, j) = v.at(r, order[j]);
  }
  return out;
}

inline std::vector<double> jacobi_eigenvalues(const SymMatrix& m) {
  return jacobi_eigensystem(m, false).values;
}

}  // namespace pointlab
