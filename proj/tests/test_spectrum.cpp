#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pointlab/branches.hpp"
#include "pointlab/perron.hpp"
#include "pointlab/rng.hpp"
#include "pointlab/solver.hpp"
#include "pointlab/spectral.hpp"
#include "oracles/scalar_roots.hpp"

using namespace pointlab;
using Catch::Approx;

namespace {

SpectralProblem one_point(int dim, double alpha) {
  SpectralProblem p;
  p.config.dim = dim;
  p.config.window = {-1.0, 1.0};
  p.config.points = {{0.0, 0.0, 0.0}};
  p.couplings = {alpha};
  return p;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want,
                 double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t j = 0; j < got.size(); ++j)
    CHECK(std::abs(got[j] - want[j]) <= tol * (1.0 + std::abs(want[j])));
}

}  // namespace

TEST_CASE("characteristic matrix entries", "[spectrum]") {
  // frozen with 30-digit arithmetic from the defining formulas
  {
    auto p = two_point_problem(1, -2.0, 1.3);
    const auto cm = build_matrix(p, 0.7);
    CHECK(cm.m.at(0, 0) == Approx(-0.21428571428571429).epsilon(1e-14));
    CHECK(cm.m.at(0, 1) == Approx(-0.28751730288116855).epsilon(1e-14));
    CHECK(cm.m.at(1, 0) == cm.m.at(0, 1));
  }
  {
    auto p = two_point_problem(2, 0.25, 1.1);
    const auto cm = build_matrix(p, 0.9);
    CHECK(cm.m.at(0, 0) == Approx(0.2147802793491741).epsilon(1e-12));
    CHECK(cm.m.at(0, 1) == Approx(-0.067974285350398718).epsilon(1e-12));
  }
  {
    auto p = two_point_problem(3, -0.5, 0.8);
    const auto cm = build_matrix(p, 1.2);
    CHECK(cm.m.at(0, 0) == Approx(-0.4045070341448628).epsilon(1e-14));
    CHECK(cm.m.at(0, 1) == Approx(-0.038087059673537827).epsilon(1e-14));
    CHECK(cm.dim == 3);
    CHECK(cm.s == 1.2);
  }
}

TEST_CASE("spectral problem validation", "[spectrum]") {
  auto p = two_point_problem(2, -1.0, 1.0);
  CHECK_THROWS_AS(build_matrix(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_matrix(p, -1.0), std::invalid_argument);

  auto d1zero = two_point_problem(1, 0.0, 1.0);
  CHECK_THROWS_AS(build_matrix(d1zero, 1.0), std::invalid_argument);

  auto mismatch = p;
  mismatch.couplings.pop_back();
  CHECK_THROWS_AS(validate(mismatch), std::invalid_argument);

  auto close = two_point_problem(3, -1.0, 0.5e-9);
  CHECK_THROWS_AS(validate(close), std::invalid_argument);

  CHECK_THROWS_AS(negative_spectrum(p, 0.0), std::invalid_argument);
}

TEST_CASE("single centre closed forms", "[spectrum]") {
  const auto d1 = negative_spectrum(one_point(1, -3.0));
  REQUIRE(d1.eigenvalues.size() == 1);
  CHECK(d1.eigenvalues[0] == Approx(-2.25).epsilon(1e-11));

  // d = 2: E = -4 exp(-4 pi alpha - 2 gamma), frozen reference values
  struct Ref { double alpha, e; };
  for (const Ref r : {Ref{-1.0, -361578.20998094326},
                      Ref{0.0, -1.2609470067487736},
                      Ref{1.0, -4.3973539055699482e-6}}) {
    const auto ns = negative_spectrum(one_point(2, r.alpha));
    REQUIRE(ns.eigenvalues.size() == 1);
    CHECK(ns.eigenvalues[0] == Approx(r.e).epsilon(1e-9));
  }

  const auto d3 = negative_spectrum(one_point(3, -1.0));
  REQUIRE(d3.eigenvalues.size() == 1);
  CHECK(d3.eigenvalues[0] == Approx(-157.91367041742974).epsilon(1e-10));

  // nonnegative coupling leaves a single 3d centre with no spectrum
  CHECK(negative_spectrum(one_point(3, 0.0)).eigenvalues.empty());
  CHECK(negative_spectrum(one_point(3, 2.0)).eigenvalues.empty());
}

TEST_CASE("two centres on the line, frozen references", "[spectrum]") {
  const auto a = negative_spectrum(two_point_problem(1, -1.0, 2.0));
  REQUIRE(a.eigenvalues.size() == 1);
  CHECK(a.eigenvalues[0] == Approx(-0.40861789677432037).epsilon(1e-11));
  REQUIRE(a.roots_s.size() == 1);
  CHECK(a.roots_s[0] == Approx(0.6392322713805369).epsilon(1e-11));
  CHECK(a.eigenvalues[0] == -a.roots_s[0] * a.roots_s[0]);

  const auto b = negative_spectrum(two_point_problem(1, -1.0, 4.0));
  check_close(b.eigenvalues, {-0.30739126814394884, -0.15872739263676033}, 1e-11);
  CHECK(b.roots_s[0] > b.roots_s[1]);  // descending s, ascending E
}

TEST_CASE("matrix solver agrees with the scalar secular equations", "[spectrum]") {
  RandomEngine rng(424242);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int rep = 0; rep < 10; ++rep) {
      double alpha = 0.0, L = 0.0;
      switch (dim) {
        case 1:
          alpha = rng.uniform(-3.0, -0.2);
          L = rng.uniform(0.5, 8.0);
          break;
        case 2:
          alpha = rng.uniform(-0.6, 0.8);
          L = rng.uniform(0.1, 5.0);
          break;
        default:
          alpha = rng.uniform(-1.0, 0.5);
          L = rng.uniform(0.05, 3.0);
          break;
      }
      const auto ns = negative_spectrum(two_point_problem(dim, alpha, L));
      const auto ref = oracle::two_point_eigenvalues(dim, alpha, L);
      INFO("dim " << dim << " alpha " << alpha << " L " << L);
      check_close(ns.eigenvalues, ref, 1e-8);
    }
  }
}

TEST_CASE("nonnegative couplings on the line give no spectrum", "[spectrum]") {
  RandomEngine rng(7);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform(0.0, 6.0));
    std::vector<double> base;
    double x = 0.0;
    for (int j = 0; j < n; ++j) {
      base.push_back(x);
      x += rng.uniform(0.3, 2.0);
    }
    SpectralProblem p = scaled_points_problem(base, 1.0, 1.0);
    for (int j = 0; j < n; ++j)
      p.couplings[j] = (rep % 3 == 0 && j % 2 == 0) ? 0.0 : rng.uniform(0.0, 5.0);
    const auto ns = negative_spectrum(p);
    CHECK(ns.eigenvalues.empty());
  }
}

TEST_CASE("two-point thresholds", "[spectrum]") {
  CHECK(two_point_threshold(1, -1.0) == 2.0);
  CHECK(two_point_threshold(1, -4.0) == 0.5);
  CHECK_THROWS_AS(two_point_threshold(1, 0.0), std::invalid_argument);
  CHECK(two_point_threshold(2, 0.0) == 1.0);
  CHECK(two_point_threshold(2, 1.0) == Approx(std::exp(2.0 * std::numbers::pi)));
  constexpr double four_pi = 4.0 * std::numbers::pi;
  CHECK(two_point_threshold(3, -1.0) == Approx(1.0 / four_pi));
  CHECK(two_point_threshold(3, 2.0) == Approx(1.0 / (2.0 * four_pi)));
  CHECK(std::isinf(two_point_threshold(3, 0.0)));
  CHECK_THROWS_AS(two_point_threshold(4, 1.0), std::invalid_argument);
}

TEST_CASE("eigenvalue count changes exactly at the threshold", "[spectrum]") {
  const double step = std::pow(10.0, 1.0 / 64.0);
  for (double alpha : {-1.0, 0.0, 1.0}) {
    const double Lstar = two_point_threshold(2, alpha);
    CHECK(negative_spectrum(two_point_problem(2, alpha, Lstar / step)).eigenvalues.size() == 1);
    CHECK(negative_spectrum(two_point_problem(2, alpha, Lstar * step)).eigenvalues.size() == 2);
  }
  {
    const double Lstar = two_point_threshold(3, -1.0);
    CHECK(negative_spectrum(two_point_problem(3, -1.0, Lstar / step)).eigenvalues.size() == 1);
    CHECK(negative_spectrum(two_point_problem(3, -1.0, Lstar * step)).eigenvalues.size() == 2);
  }
  {
    const double Lstar = two_point_threshold(3, 1.0);
    CHECK(negative_spectrum(two_point_problem(3, 1.0, Lstar / step)).eigenvalues.size() == 1);
    CHECK(negative_spectrum(two_point_problem(3, 1.0, Lstar * step)).eigenvalues.empty());
  }
}

TEST_CASE("planar coupling acts as a pure rescaling", "[spectrum]") {
  // E(alpha, L) = e^{-4 pi alpha} E(0, L e^{-2 pi alpha})
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (const auto [alpha, L] : {std::pair{0.3, 0.7}, std::pair{-0.5, 2.0}}) {
    const auto lhs = negative_spectrum(two_point_problem(2, alpha, L));
    const auto rhs =
        negative_spectrum(two_point_problem(2, 0.0, L * std::exp(-two_pi * alpha)));
    const double factor = std::exp(-2.0 * two_pi * alpha);
    REQUIRE(lhs.eigenvalues.size() == rhs.eigenvalues.size());
    for (std::size_t j = 0; j < lhs.eigenvalues.size(); ++j)
      CHECK(lhs.eigenvalues[j] ==
            Approx(factor * rhs.eigenvalues[j]).epsilon(1e-10));
  }
}

TEST_CASE("spectrum is invariant under rigid motions", "[spectrum]") {
  SpectralProblem p;
  p.config.dim = 2;
  p.config.window = {-10.0, 10.0};
  p.config.points = {{0.0, 0.0, 0.0}, {1.3, 0.0, 0.0}, {0.4, 2.1, 0.0}};
  p.couplings = {-0.2, 0.1, -0.4};

  const double th = 0.83, cx = 1.75, cy = -2.5;
  SpectralProblem q = p;
  for (auto& pt : q.config.points) {
    const double x = pt[0], y = pt[1];
    pt[0] = std::cos(th) * x - std::sin(th) * y + cx;
    pt[1] = std::sin(th) * x + std::cos(th) * y + cy;
  }
  const auto a = negative_spectrum(p);
  const auto b = negative_spectrum(q);
  check_close(b.eigenvalues, a.eigenvalues, 1e-10);
}

TEST_CASE("branch curves over a spacing grid", "[spectrum]") {
  std::vector<double> grid;
  for (int k = 0; k < 24; ++k)
    grid.push_back(0.1 * std::pow(10.0, 3.0 * k / 23.0));
  grid.back() = 100.0;
  const auto curve = branch_curve(1, -1.0, {0.0, 1.0}, grid);
  CHECK(curve.failed_L.empty());
  REQUIRE(curve.branches.size() == 2);
  const auto& e1 = curve.branches[0];
  CHECK(e1.L == grid);  // ground branch exists everywhere
  // nondecreasing up to bisection jitter; strictly rising before it
  // saturates at -1/4
  for (std::size_t j = 1; j < e1.E.size(); ++j) CHECK(e1.E[j] >= e1.E[j - 1] - 1e-11);
  CHECK(e1.E[8] > e1.E[0]);
  CHECK(e1.E.back() == Approx(-0.25).margin(1e-6));
  const auto& e2 = curve.branches[1];
  for (double L : e2.L) CHECK(L > 2.0);  // second branch opens at -2/alpha
  for (std::size_t j = 1; j < e2.E.size(); ++j) CHECK(e2.E[j] <= e2.E[j - 1] + 1e-11);
  CHECK(e2.E.front() > e2.E.back());
  CHECK(e2.E.back() == Approx(-0.25).margin(1e-6));

  CHECK_THROWS_AS(branch_curve(1, -1.0, {0.0, 1.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(branch_curve(1, -1.0, {0.0, 1.0}, {2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("perron structure of the exponential kernel", "[spectrum]") {
  std::vector<Point> two = {{0.0, 0.0, 0.0}, {1.5, 0.0, 0.0}};
  const auto r2 = perron_largest(exp_kernel(two, 1, 2.0));
  CHECK(r2.mu1 == Approx(1.0 + std::exp(-3.0)).epsilon(1e-12));
  CHECK(r2.gap == Approx(2.0 * std::exp(-3.0)).epsilon(1e-10));
  REQUIRE(r2.vec.size() == 2);
  CHECK(r2.vec[0] == Approx(0.5).epsilon(1e-10));

  // mu1 decreases strictly as s grows (entries shrink)
  double prev = 2.0 + 1e-9;
  for (double s : {0.5, 1.0, 2.0, 4.0}) {
    const double mu = perron_largest(exp_kernel(two, 1, s)).mu1;
    CHECK(mu < prev);
    prev = mu;
  }
  // s -> 0: kernel tends to the all-ones matrix, mu1 -> N
  RandomEngine rng(99);
  std::vector<Point> pts;
  for (int j = 0; j < 6; ++j)
    pts.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), 0.0});
  const auto tiny = perron_largest(exp_kernel(pts, 2, 1e-9));
  CHECK(tiny.mu1 == Approx(6.0).epsilon(1e-6));

  const auto r6 = perron_largest(exp_kernel(pts, 2, 1.3));
  CHECK(r6.gap > 0.0);
  double sum = 0.0;
  for (double v : r6.vec) {
    CHECK(v > 0.0);
    sum += v;
  }
  CHECK(sum == Approx(1.0).epsilon(1e-12));

  // entries that underflow to zero are rejected, as is an asymmetric matrix
  std::vector<Point> far = {{0.0, 0.0, 0.0}, {800.0, 0.0, 0.0}};
  CHECK_THROWS_AS(perron_largest(exp_kernel(far, 1, 1.0)), std::invalid_argument);
  SymMatrix bad(2);
  bad.at(0, 0) = 1.0; bad.at(1, 1) = 1.0;
  bad.at(0, 1) = 0.5; bad.at(1, 0) = 0.25;
  CHECK_THROWS_AS(perron_largest(bad), std::invalid_argument);
}
