#pragma once

#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "sicle/graph.hpp"
#include "sicle/image.hpp"

namespace testutil {

inline sicle::Image make_image(int width, int height, int channels,
                               std::vector<double> features) {
  sicle::Image img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.features = std::move(features);
  return img;
}

inline sicle::Image random_image(int width, int height, int channels, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> feats(static_cast<std::size_t>(width) * height * channels);
  for (auto& f : feats) f = unit(rng);
  return make_image(width, height, channels, std::move(feats));
}

inline std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline void write_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

// Number of 8-connected components among pixels holding `value`.
inline int component_count(const std::vector<int>& values, int width, int height, int value) {
  std::vector<char> seen(values.size(), 0);
  int components = 0;
  for (int start = 0; start < width * height; ++start) {
    if (values[start] != value || seen[start]) continue;
    ++components;
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      const int x = p % width, y = p / width;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
          const int q = ny * width + nx;
          if (!seen[q] && values[q] == value) {
            seen[q] = 1;
            stack.push_back(q);
          }
        }
    }
  }
  return components;
}

// Every label in 1..K present, 8-connected, covering all pixels.
inline bool valid_partition(const sicle::LabelMap& map, int expected_k) {
  if (map.max_label() != expected_k) return false;
  for (const int l : map.labels)
    if (l < 1 || l > expected_k) return false;
  for (int l = 1; l <= expected_k; ++l)
    if (component_count(map.labels, map.width, map.height, l) != 1) return false;
  return true;
}

// Independent minimax-path oracle (ROOT mode): given the forest's root
// map, the arc cost w(x,y) = ||F(root(x)) - F(y)|| is a fixed,
// path-independent function on arcs. Relax max-composed arc costs over all
// arcs until fixpoint; the result equals the brute-force minimum over all
// simple paths from any seed of the maximum arc cost.
inline std::vector<double> minimax_costs_oracle(const sicle::Image& image,
                                                const sicle::Topology& topology,
                                                const std::vector<int>& seeds,
                                                const std::vector<int>& root) {
  const int n = topology.vertex_count();
  std::vector<double> cost(n, std::numeric_limits<double>::infinity());
  for (const int s : seeds) cost[s] = 0.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      if (!std::isfinite(cost[x])) continue;
      const auto ref = image.feature(root[x]);
      topology.for_each_neighbor(x, [&](int y) {
        double arc = 0.0;
        const auto fy = image.feature(y);
        for (std::size_t c = 0; c < ref.size(); ++c) {
          const double d = ref[c] - fy[c];
          arc += d * d;
        }
        arc = std::sqrt(arc);
        const double cand = std::max(cost[x], arc);
        if (cand < cost[y]) {
          cost[y] = cand;
          changed = true;
        }
      });
    }
  }
  return cost;
}

}  // namespace testutil
