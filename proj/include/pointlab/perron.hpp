#pragma once

// Perron data of the positive kernel Mtilde_{jk} = exp(-s |x_j - x_k|).
// The leading eigenvalue mu_1 is simple with a strictly positive
// eigenvector; mu_1 decreases from N (s -> 0) to 1 (s -> infinity).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pointlab/configuration.hpp"
#include "pointlab/errors.hpp"
#include "pointlab/matrix.hpp"

namespace pointlab {

inline SymMatrix exp_kernel(const std::vector<Point>& pts, int dim, double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("exp_kernel: s must be positive");
  (void)dim;
  const int n = static_cast<int>(pts.size());
  if (n == 0) throw std::invalid_argument("exp_kernel: empty point set");
  SymMatrix m(n);
  for (int j = 0; j < n; ++j) {
    m.at(j, j) = 1.0;
    for (int k = j + 1; k < n; ++k) {
      const double v = std::exp(-s * dist(pts[j], pts[k]));
      m.at(j, k) = v;
      m.at(k, j) = v;
    }
  }
  return m;
}

struct PerronResult {
  double mu1 = 0.0;             // leading eigenvalue (power iteration)
  double gap = 0.0;             // mu1 - mu2 (from the dense eigensolver)
  std::vector<double> vec;      // positive eigenvector, normalized to unit sum
  long long iterations = 0;
};

inline PerronResult perron_largest(const SymMatrix& m, long long max_iter = 100000) {
  detail::require_symmetric(m, "perron_largest");
  const int n = m.n;
  for (double v : m.a)
    if (!(v > 0.0))
      throw std::invalid_argument("perron_largest: kernel entries must be positive");

  std::vector<double> v(n, 1.0 / n), w(n, 0.0);
  double mu = 0.0;
  long long it = 0;
  for (; it < max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m.at(i, j) * v[j];
      w[i] = acc;
    }
    double norm = 0.0, rayleigh = 0.0;
    for (int i = 0; i < n; ++i) {
      norm += w[i] * w[i];
      rayleigh += w[i] * v[i];  // v is unit 2-norm after the first pass
    }
    norm = std::sqrt(norm);
    double delta_v = 0.0;
    for (int i = 0; i < n; ++i) {
      const double next = w[i] / norm;
      delta_v = std::max(delta_v, std::abs(next - v[i]));
      v[i] = next;
    }
    const double delta_mu = std::abs(rayleigh - mu);
    mu = rayleigh;
    if (it > 0 && delta_v <= 1e-14 && delta_mu <= 1e-13 * std::abs(mu)) break;
  }
  if (it == max_iter)
    throw ConvergenceError("perron_largest: power iteration budget exhausted");

  PerronResult out;
  out.iterations = it + 1;
  out.mu1 = mu;
  const auto eig = jacobi_eigenvalues(m);
  out.gap = (n >= 2) ? eig[n - 1] - eig[n - 2] : eig[0];
  double sum = 0.0;
  for (double x : v) sum += x;
  out.vec.resize(n);
  for (int i = 0; i < n; ++i) out.vec[i] = v[i] / sum;
  return out;
}

}  // namespace pointlab
