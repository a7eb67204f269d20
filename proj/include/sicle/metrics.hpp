#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sicle/image.hpp"
#include "sicle/pnm.hpp"

namespace sicle {

// Per-pixel ground-truth region ids. Paper datasets are binary
// object/background; any number of regions is accepted.
struct GroundTruth {
  int width = 0;
  int height = 0;
  std::vector<int> regions;

  int pixel_count() const { return width * height; }
};

// PGM whose distinct gray values are the regions.
inline GroundTruth load_ground_truth(const std::string& path) {
  const pnm::Raster r = pnm::read(path);
  if (r.channels() != 1) throw pnm::IoError(path + ": ground truth must be grayscale (PGM)");
  GroundTruth gt;
  gt.width = r.width;
  gt.height = r.height;
  gt.regions.assign(r.samples.begin(), r.samples.end());
  return gt;
}

struct MetricsReport {
  double br = 0.0;
  double ue = 0.0;
  int superpixel_count = 0;
};

namespace detail {

// Inter-pixel boundary marked once: a pixel is boundary when its right or
// down neighbor has a different value, so each crack contributes one pixel.
template <class T>
std::vector<char> boundary_mask(const std::vector<T>& values, int width, int height) {
  static constexpr int kForward[2][2] = {{1, 0}, {0, 1}};
  std::vector<char> mask(values.size(), 0);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const T v = values[y * width + x];
      for (const auto& [dx, dy] : kForward) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
        if (values[ny * width + nx] != v) {
          mask[y * width + x] = 1;
          break;
        }
      }
    }
  return mask;
}

}  // namespace detail

// Fraction of ground-truth boundary pixels with a superpixel border pixel
// within Chebyshev distance <= tolerance. A single-region ground truth has
// no boundary and scores 1.
inline double boundary_recall(const LabelMap& map, const GroundTruth& gt, int tolerance) {
  if (map.width != gt.width || map.height != gt.height)
    throw std::invalid_argument("boundary_recall: dimensions differ");
  if (tolerance < 0) throw std::invalid_argument("boundary_recall: negative tolerance");
  const int w = gt.width, h = gt.height;
  const auto gt_boundary = detail::boundary_mask(gt.regions, w, h);
  const auto sp_boundary = detail::boundary_mask(map.labels, w, h);

  std::int64_t total = 0, hit = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!gt_boundary[y * w + x]) continue;
      ++total;
      bool found = false;
      for (int dy = -tolerance; dy <= tolerance && !found; ++dy)
        for (int dx = -tolerance; dx <= tolerance && !found; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          found = sp_boundary[ny * w + nx];
        }
      if (found) ++hit;
    }
  if (total == 0) return 1.0;
  return static_cast<double>(hit) / static_cast<double>(total);
}

// (1/|V|) * sum over regions G, superpixels S intersecting G of
// min(|S inter G|, |S minus G|).
inline double under_segmentation_error(const LabelMap& map, const GroundTruth& gt) {
  if (map.width != gt.width || map.height != gt.height)
    throw std::invalid_argument("under_segmentation_error: dimensions differ");
  const std::int64_t n = gt.pixel_count();

  std::map<int, std::int64_t> sp_size;
  std::map<std::pair<int, int>, std::int64_t> overlap;  // (superpixel, region) -> count
  for (std::int64_t p = 0; p < n; ++p) {
    ++sp_size[map.labels[p]];
    ++overlap[{map.labels[p], gt.regions[p]}];
  }
  std::int64_t error = 0;
  for (const auto& [key, inter] : overlap) {
    const std::int64_t outside = sp_size[key.first] - inter;
    error += std::min(inter, outside);
  }
  return static_cast<double>(error) / static_cast<double>(n);
}

inline MetricsReport evaluate(const LabelMap& map, const GroundTruth& gt, int tolerance) {
  return {boundary_recall(map, gt, tolerance), under_segmentation_error(map, gt),
          map.max_label()};
}

}  // namespace sicle
