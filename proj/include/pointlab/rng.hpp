#pragma once

// Deterministic randomness.  The engine is std::mt19937_64 (its output
// sequence is pinned by the standard), but every distribution is drawn by
// hand so sampled streams are reproducible bit for bit across compilers and
// standard libraries; std:: distributions carry no such guarantee.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace pointlab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Independent stream seed for (base seed, stream index); used to give every
// Monte Carlo trial or probe its own engine without correlated state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
  return splitmix64(s);
}

class RandomEngine {
 public:
  explicit RandomEngine(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1), 53 random bits
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exact Poisson sample by multiplicative inversion.  Means above 256 are
  // split into independent chunks first, so the e^{-mean} pivot never
  // underflows and the cost stays O(mean) draws.
  long long poisson(double mean) {
    if (!std::isfinite(mean) || mean < 0.0)
      throw std::invalid_argument("poisson: mean must be finite and nonnegative, got " +
                                  std::to_string(mean));
    long long total = 0;
    while (mean > 256.0) {
      total += poisson_small(256.0);
      mean -= 256.0;
    }
    return total + poisson_small(mean);
  }

  // uniform in the closed ball |x| <= radius of R^dim, by rejection from the
  // bounding cube; trailing coordinates stay zero
  std::array<double, 3> in_ball(int dim, double radius) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    if (radius == 0.0) return x;
    for (;;) {
      double r2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        x[a] = uniform(-radius, radius);
        r2 += x[a] * x[a];
      }
      if (r2 <= radius * radius) return x;
    }
  }

  std::uint64_t bits() { return eng_(); }

 private:
  long long poisson_small(double mean) {
    if (mean == 0.0) return 0;
    const double pivot = std::exp(-mean);
    long long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > pivot);
    return k - 1;
  }

  std::mt19937_64 eng_;
};

}  // namespace pointlab
