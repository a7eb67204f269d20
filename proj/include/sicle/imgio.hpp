#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sicle/color.hpp"
#include "sicle/image.hpp"
#include "sicle/pnm.hpp"

namespace sicle {

using pnm::IoError;

// PGM -> grayscale intensity in [0,1]; PPM -> CIELAB from sRGB (D65).
inline Image load_image(const std::string& path) {
  const pnm::Raster r = pnm::read(path);
  Image img;
  img.width = r.width;
  img.height = r.height;
  img.channels = r.channels();
  img.source_depth = r.maxval > 255 ? 16 : 8;
  img.features.resize(static_cast<std::size_t>(img.pixel_count()) * img.channels);
  const double scale = 1.0 / r.maxval;
  if (img.channels == 1) {
    for (int p = 0; p < img.pixel_count(); ++p)
      img.features[p] = r.samples[p] * scale;
  } else {
    for (int p = 0; p < img.pixel_count(); ++p) {
      const auto lab = color::srgb_to_lab(r.samples[3 * p] * scale,
                                          r.samples[3 * p + 1] * scale,
                                          r.samples[3 * p + 2] * scale);
      for (int c = 0; c < 3; ++c) img.features[3 * p + c] = lab[c];
    }
  }
  return img;
}

// PGM rescaled by its maxval into [0,1]. Dimensions must match `width`x`height`.
inline SaliencyMap load_saliency(const std::string& path, int width, int height) {
  const pnm::Raster r = pnm::read(path);
  if (r.channels() != 1) throw IoError(path + ": saliency map must be grayscale (PGM)");
  if (r.width != width || r.height != height)
    throw IoError(path + ": saliency dimensions " + std::to_string(r.width) + "x" +
                  std::to_string(r.height) + " do not match image " +
                  std::to_string(width) + "x" + std::to_string(height));
  SaliencyMap sal;
  sal.width = r.width;
  sal.height = r.height;
  sal.values.resize(r.samples.size());
  const double scale = 1.0 / r.maxval;
  for (std::size_t i = 0; i < r.samples.size(); ++i) sal.values[i] = r.samples[i] * scale;
  return sal;
}

// All-ones map; stands in when no prior object information is given.
inline SaliencyMap uniform_saliency(int width, int height) {
  SaliencyMap sal;
  sal.width = width;
  sal.height = height;
  sal.values.assign(static_cast<std::size_t>(width) * height, 1.0);
  return sal;
}

// Label maps are stored as PGM with maxval = max label, one sample per label.
inline void save_label_map(const LabelMap& map, const std::string& path) {
  const int k = map.max_label();
  if (k < 1) throw IoError(path + ": label map is empty");
  if (k > 65535) throw IoError(path + ": max label " + std::to_string(k) + " exceeds 65535");
  pnm::Raster r;
  r.magic = '5';
  r.width = map.width;
  r.height = map.height;
  r.maxval = k;
  r.samples.resize(map.labels.size());
  for (std::size_t i = 0; i < map.labels.size(); ++i)
    r.samples[i] = static_cast<std::uint16_t>(map.labels[i]);
  pnm::write(r, path);
}

inline LabelMap load_label_map(const std::string& path) {
  const pnm::Raster r = pnm::read(path);
  if (r.channels() != 1) throw IoError(path + ": label map must be grayscale (PGM)");
  LabelMap map;
  map.width = r.width;
  map.height = r.height;
  map.labels.assign(r.samples.begin(), r.samples.end());
  for (const int l : map.labels)
    if (l < 1) throw IoError(path + ": label map contains a zero sample");
  return map;
}

// Pixels whose 8-neighborhood contains a different label are painted with
// `border_color` (working-space components); others keep their color.
// Grayscale input is promoted to CIELAB.
inline Image render_overlay(const Image& image, const LabelMap& map,
                            const std::array<double, 3>& border_color) {
  if (image.width != map.width || image.height != map.height)
    throw std::invalid_argument("render_overlay: image/label dimensions differ");
  Image out;
  out.width = image.width;
  out.height = image.height;
  out.channels = 3;
  out.source_depth = image.source_depth;
  out.features.resize(static_cast<std::size_t>(out.pixel_count()) * 3);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const int p = y * image.width + x;
      bool border = false;
      for (int dy = -1; dy <= 1 && !border; ++dy) {
        for (int dx = -1; dx <= 1 && !border; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= image.width ||
              ny >= image.height)
            continue;
          border = map.labels[ny * image.width + nx] != map.labels[p];
        }
      }
      if (border) {
        for (int c = 0; c < 3; ++c) out.features[3 * p + c] = border_color[c];
      } else if (image.channels == 3) {
        for (int c = 0; c < 3; ++c) out.features[3 * p + c] = image.features[3 * p + c];
      } else {
        const double g = image.features[p];
        const auto lab = color::srgb_to_lab(g, g, g);
        for (int c = 0; c < 3; ++c) out.features[3 * p + c] = lab[c];
      }
    }
  }
  return out;
}

// Writes m=1 as 8-bit PGM, m=3 as 8-bit PPM (CIELAB converted back to sRGB).
inline void save_image(const Image& image, const std::string& path) {
  pnm::Raster r;
  r.width = image.width;
  r.height = image.height;
  r.maxval = 255;
  if (image.channels == 1) {
    r.magic = '5';
    r.samples.resize(image.pixel_count());
    for (int p = 0; p < image.pixel_count(); ++p) {
      const double v = std::clamp(image.features[p], 0.0, 1.0);
      r.samples[p] = static_cast<std::uint16_t>(std::lround(v * 255.0));
    }
  } else {
    r.magic = '6';
    r.samples.resize(static_cast<std::size_t>(image.pixel_count()) * 3);
    for (int p = 0; p < image.pixel_count(); ++p) {
      const auto rgb = color::lab_to_srgb(image.features[3 * p], image.features[3 * p + 1],
                                          image.features[3 * p + 2]);
      for (int c = 0; c < 3; ++c)
        r.samples[3 * p + c] = static_cast<std::uint16_t>(std::lround(rgb[c] * 255.0));
    }
  }
  pnm::write(r, path);
}

}  // namespace sicle
