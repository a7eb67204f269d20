#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "sicle/graph.hpp"
#include "sicle/image.hpp"

namespace sicle {

// Arc-cost estimators for the f_max path cost: ROOT compares against the
// seed's features, DYN against the conquering tree's running mean.
enum class ArcCostMode { Root, Dyn };

// Per-vertex forest maps from one IFT execution. pred == -1 marks a root.
struct ForestState {
  std::vector<double> cost;
  std::vector<int> root;
  std::vector<int> pred;
  std::vector<int> label;  // compact id, position of the seed in the seed list
};

// Aggregates of one optimum-path tree.
struct TreeStats {
  std::int64_t size = 0;
  std::vector<double> feat_sum;
  double sal_sum = 0.0;
  std::set<int> neighbor_ids;  // labels of adjacent trees
};

struct ForestResult {
  ForestState forest;
  std::vector<TreeStats> stats;
};

// f_max composition rule: cost of extending a path by one arc.
inline double path_cost_fmax(double prefix_cost, double arc_cost) {
  return prefix_cost > arc_cost ? prefix_cost : arc_cost;
}

inline std::vector<double> tree_mean_features(const TreeStats& stats) {
  if (stats.size == 0) throw std::invalid_argument("tree_mean_features: empty tree");
  std::vector<double> mean(stats.feat_sum.size());
  for (std::size_t c = 0; c < mean.size(); ++c) mean[c] = stats.feat_sum[c] / stats.size;
  return mean;
}

inline double tree_mean_saliency(const TreeStats& stats) {
  return stats.sal_sum / static_cast<double>(stats.size);
}

namespace detail {

inline double euclid(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double d = a[c] - b[c];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace detail

// Seed-restricted IFT under f_max. Vertices are finalized on first dequeue;
// equal costs dequeue in queue-insertion order (FIFO), which together with
// the fixed neighbor enumeration makes the result deterministic for both
// arc-cost modes.
inline ForestResult run_ift(const Image& image, const Topology& topology,
                            const std::vector<int>& seeds, ArcCostMode mode,
                            const SaliencyMap& saliency) {
  const int n = topology.vertex_count();
  if (seeds.empty()) throw std::invalid_argument("run_ift: empty seed set");
  if (image.width != topology.width() || image.height != topology.height())
    throw std::invalid_argument("run_ift: image/topology dimensions differ");
  if (saliency.width != image.width || saliency.height != image.height)
    throw std::invalid_argument("run_ift: saliency dimensions differ");

  const int m = image.channels;
  ForestResult res;
  ForestState& f = res.forest;
  f.cost.assign(n, std::numeric_limits<double>::infinity());
  f.root.assign(n, -1);
  f.pred.assign(n, -1);
  f.label.assign(n, -1);
  res.stats.assign(seeds.size(), TreeStats{});
  for (auto& s : res.stats) s.feat_sum.assign(m, 0.0);

  struct Entry {
    double cost;
    std::uint64_t order;
    int vertex;
    bool operator>(const Entry& o) const {
      if (cost != o.cost) return cost > o.cost;
      return order > o.order;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  std::vector<char> done(n, 0);
  std::uint64_t order = 0;

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const int s = seeds[i];
    if (s < 0 || s >= n) throw std::invalid_argument("run_ift: seed out of range");
    if (f.label[s] != -1) throw std::invalid_argument("run_ift: duplicate seed");
    f.cost[s] = 0.0;
    f.root[s] = s;
    f.label[s] = static_cast<int>(i);
    queue.push({0.0, order++, s});
  }

  std::vector<double> mean(m);
  while (!queue.empty()) {
    const Entry top = queue.top();
    queue.pop();
    const int x = top.vertex;
    if (done[x]) continue;  // stale entry
    done[x] = 1;

    TreeStats& stats = res.stats[f.label[x]];
    stats.size += 1;
    const auto fx = image.feature(x);
    for (int c = 0; c < m; ++c) stats.feat_sum[c] += fx[c];
    stats.sal_sum += saliency.values[x];

    std::span<const double> ref;
    if (mode == ArcCostMode::Root) {
      ref = image.feature(f.root[x]);
    } else {
      for (int c = 0; c < m; ++c) mean[c] = stats.feat_sum[c] / stats.size;
      ref = mean;
    }

    topology.for_each_neighbor(x, [&](int y) {
      if (done[y]) return;
      const double arc = detail::euclid(ref, image.feature(y));
      const double cand = path_cost_fmax(f.cost[x], arc);
      if (cand < f.cost[y]) {
        f.cost[y] = cand;
        f.root[y] = f.root[x];
        f.pred[y] = x;
        f.label[y] = f.label[x];
        queue.push({cand, order++, y});
      }
    });
  }

  // Tree adjacency from a single sweep over the arcs crossing boundaries.
  for (int x = 0; x < n; ++x) {
    topology.for_each_neighbor(x, [&](int y) {
      if (y <= x) return;
      const int lx = f.label[x], ly = f.label[y];
      if (lx != ly) {
        res.stats[lx].neighbor_ids.insert(ly);
        res.stats[ly].neighbor_ids.insert(lx);
      }
    });
  }
  return res;
}

}  // namespace sicle
