#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sicle {

// Image lattice digraph: vertices are pixels, arcs connect pixels within
// Euclidean distance `radius`. radius = sqrt(2) gives the 8-neighborhood.
// Neighbor order is a row-major scan of the offset window, which fixes the
// IFT tie-breaking.
class Topology {
 public:
  Topology(int width, int height, double radius = 1.4142135623730951)
      : width_(width), height_(height), radius_(radius) {
    if (width < 1 || height < 1) throw std::invalid_argument("Topology: degenerate dimensions");
    if (radius <= 0.0) throw std::invalid_argument("Topology: radius must be positive");
    const int r = static_cast<int>(std::floor(radius));
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (dx * dx + dy * dy <= radius * radius) offsets_.emplace_back(dx, dy);
      }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  double radius() const { return radius_; }
  int vertex_count() const { return width_ * height_; }

  template <class F>
  void for_each_neighbor(int v, F&& f) const {
    const int x = v % width_;
    const int y = v / width_;
    for (const auto& [dx, dy] : offsets_) {
      const int nx = x + dx, ny = y + dy;
      if (nx < 0 || ny < 0 || nx >= width_ || ny >= height_) continue;
      f(ny * width_ + nx);
    }
  }

  std::vector<int> neighbors(int v) const {
    if (v < 0 || v >= vertex_count()) throw std::out_of_range("Topology::neighbors: vertex out of range");
    std::vector<int> out;
    out.reserve(offsets_.size());
    for_each_neighbor(v, [&](int n) { out.push_back(n); });
    return out;
  }

 private:
  int width_, height_;
  double radius_;
  std::vector<std::pair<int, int>> offsets_;
};

}  // namespace sicle
