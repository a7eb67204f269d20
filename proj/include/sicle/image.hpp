#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace sicle {

// 2D image with per-pixel feature vectors in the working space:
// grayscale intensity in [0,1] (channels == 1) or CIELAB (channels == 3).
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  int source_depth = 8;  // bits per sample of the input file
  std::vector<double> features;  // row-major, interleaved

  int pixel_count() const { return width * height; }

  std::span<const double> feature(int p) const {
    return {features.data() + static_cast<std::size_t>(p) * channels,
            static_cast<std::size_t>(channels)};
  }
  std::span<double> feature(int p) {
    return {features.data() + static_cast<std::size_t>(p) * channels,
            static_cast<std::size_t>(channels)};
  }
};

// Per-pixel object membership likelihood in [0,1].
struct SaliencyMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  int pixel_count() const { return width * height; }
};

// Superpixel partition; labels form a contiguous range 1..K.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<int> labels;

  int pixel_count() const { return width * height; }
  int max_label() const {
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  }

  bool operator==(const LabelMap&) const = default;
};

}  // namespace sicle
