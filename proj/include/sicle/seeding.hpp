#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace sicle {

enum class SamplingStrategy { Grid, Random };

struct SamplingSpec {
  SamplingStrategy strategy = SamplingStrategy::Random;
  int n0 = 3000;
  std::uint64_t rng_seed = 0;
};

// Equidistant sampling with per-axis counts proportional to the axis
// lengths: with lambda_x = w/(w+h), lambda_y = h/(w+h) and
// c = sqrt(n0/(lambda_x*lambda_y)), each axis gets max(1, round(lambda*c))
// seeds placed at cell centers. Seeds are returned in row-major order.
inline std::vector<int> sample_grid(int width, int height, int n0) {
  if (width < 1 || height < 1) throw std::invalid_argument("sample_grid: degenerate dimensions");
  if (n0 < 1) throw std::invalid_argument("sample_grid: n0 must be >= 1");
  const double lambda_x = static_cast<double>(width) / (width + height);
  const double lambda_y = static_cast<double>(height) / (width + height);
  const double c = std::sqrt(n0 / (lambda_x * lambda_y));
  const int kx = std::max(1, static_cast<int>(std::floor(lambda_x * c + 0.5)));
  const int ky = std::max(1, static_cast<int>(std::floor(lambda_y * c + 0.5)));
  const double stride_x = static_cast<double>(width) / kx;
  const double stride_y = static_cast<double>(height) / ky;
  std::vector<int> seeds;
  seeds.reserve(static_cast<std::size_t>(kx) * ky);
  for (int j = 0; j < ky; ++j) {
    const int y = std::min(height - 1, static_cast<int>(std::floor((j + 0.5) * stride_y)));
    for (int i = 0; i < kx; ++i) {
      const int x = std::min(width - 1, static_cast<int>(std::floor((i + 0.5) * stride_x)));
      seeds.push_back(y * width + x);
    }
  }
  return seeds;
}

// n0 distinct vertices drawn uniformly without replacement (partial
// Fisher-Yates over the full index range, mt19937_64), returned in draw
// order. Deterministic for a fixed rng_seed.
inline std::vector<int> sample_random(int width, int height, int n0, std::uint64_t rng_seed) {
  if (width < 1 || height < 1) throw std::invalid_argument("sample_random: degenerate dimensions");
  const std::int64_t total = static_cast<std::int64_t>(width) * height;
  if (n0 < 1 || n0 > total) throw std::invalid_argument("sample_random: n0 out of range");
  std::mt19937_64 rng(rng_seed);
  std::vector<int> pool(total);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> seeds(n0);
  for (int i = 0; i < n0; ++i) {
    std::uniform_int_distribution<std::int64_t> pick(i, total - 1);
    std::swap(pool[i], pool[pick(rng)]);
    seeds[i] = pool[i];
  }
  return seeds;
}

inline std::vector<int> sample_seeds(int width, int height, const SamplingSpec& spec) {
  return spec.strategy == SamplingStrategy::Grid
             ? sample_grid(width, height, spec.n0)
             : sample_random(width, height, spec.n0, spec.rng_seed);
}

}  // namespace sicle
