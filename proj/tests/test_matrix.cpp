#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pointlab/matrix.hpp"
#include "pointlab/rng.hpp"
#include "oracles/sturm_eigs.hpp"

using namespace pointlab;
using Catch::Approx;

namespace {

SymMatrix random_symmetric(int n, std::uint64_t seed) {
  RandomEngine rng(seed);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = rng.uniform(-2.0, 2.0);
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  return m;
}

}  // namespace

TEST_CASE("identity and 2x2 exchange matrix", "[matrix]") {
  SymMatrix id(3);
  for (int i = 0; i < 3; ++i) id.at(i, i) = 1.0;
  const auto es = jacobi_eigensystem(id);
  for (double v : es.values) CHECK(v == Approx(1.0).margin(1e-14));

  SymMatrix x(2);
  x.at(0, 1) = 1.0;
  x.at(1, 0) = 1.0;
  const auto ex = jacobi_eigensystem(x);
  CHECK(ex.values[0] == Approx(-1.0).margin(1e-14));
  CHECK(ex.values[1] == Approx(1.0).margin(1e-14));
}

TEST_CASE("1x1 matrix", "[matrix]") {
  SymMatrix m(1);
  m.at(0, 0) = -3.25;
  CHECK(jacobi_eigenvalues(m)[0] == -3.25);
}

TEST_CASE("random matrices match the bisection oracle", "[matrix]") {
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    const auto m = random_symmetric(6, seed);
    const auto jac = jacobi_eigenvalues(m);
    const auto ora = oracle::symmetric_eigenvalues(m.a, 6);
    REQUIRE(jac.size() == ora.size());
    for (std::size_t i = 0; i < jac.size(); ++i)
      CHECK(jac[i] == Approx(ora[i]).margin(1e-8 * (1 + m.max_abs())));
  }
}

TEST_CASE("eigen pairs satisfy the residual bound", "[matrix]") {
  const auto m = random_symmetric(8, 99);
  const auto es = jacobi_eigensystem(m);
  double norm = 0.0;
  for (double v : m.a) norm = std::max(norm, std::abs(v));
  for (int k = 0; k < 8; ++k) {
    double resid = 0.0, unit = 0.0;
    for (int i = 0; i < 8; ++i) {
      double av = 0.0;
      for (int j = 0; j < 8; ++j) av += m.at(i, j) * es.vectors.at(j, k);
      resid = std::max(resid, std::abs(av - es.values[k] * es.vectors.at(i, k)));
      unit += es.vectors.at(i, k) * es.vectors.at(i, k);
    }
    CHECK(resid <= 1e-10 * (1 + norm));
    CHECK(unit == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("eigenvalue counts agree with Sturm counts", "[matrix]") {
  const auto m = random_symmetric(7, 5);
  const auto vals = jacobi_eigenvalues(m);
  for (double x : {-3.0, -1.0, 0.0, 0.5, 2.5}) {
    int below = 0;
    for (double v : vals) below += v < x;
    CHECK(below == oracle::eigen_count_below(m.a, 7, x));
  }
}

TEST_CASE("asymmetric input is rejected", "[matrix]") {
  SymMatrix m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0 + 1e-6;
  CHECK_THROWS_AS(jacobi_eigenvalues(m), std::invalid_argument);
}
