#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "sicle/ift.hpp"
#include "sicle/imgio.hpp"
#include "sicle/removal.hpp"
#include "sicle/seeding.hpp"

namespace sicle {

struct SicleConfig {
  SamplingSpec sampling;
  ArcCostMode mode = ArcCostMode::Root;
  RelevanceCriterion criterion;
  Schedule schedule;
  std::set<int> emit_scales;  // superpixel counts to snapshot along the way
};

// Ablation-selected defaults: RND oversampling of 3000 seeds, ROOT arc
// costs, min size-contrast relevance with object modulation, at most 5
// iterations.
inline SicleConfig default_config() {
  SicleConfig cfg;
  cfg.sampling = {SamplingStrategy::Random, 3000, 0};
  cfg.mode = ArcCostMode::Root;
  cfg.criterion = {RelevanceBase::MinSizeContrast, true};
  cfg.schedule = Schedule::curve(3000, 100, 5);
  return cfg;
}

struct SegmentationResult {
  LabelMap final;
  std::map<int, LabelMap> scales;  // superpixel count -> snapshot
  int iterations_run = 0;
  std::vector<int> per_iteration_seed_counts;
};

namespace detail {

inline LabelMap label_map_from_forest(const ForestState& forest, int width, int height) {
  LabelMap map;
  map.width = width;
  map.height = height;
  map.labels.resize(forest.label.size());
  for (std::size_t i = 0; i < forest.label.size(); ++i) map.labels[i] = forest.label[i] + 1;
  return map;
}

}  // namespace detail

// Oversample once, then alternate IFT delineation and seed removal until
// the seed count reaches Nf. Requested emit scales are injected into the
// decreasing count sequence as exact targets. A null saliency falls back
// to the all-ones map, which leaves every relevance criterion unmodulated.
inline SegmentationResult segment(const Image& image, const SaliencyMap* saliency,
                                  const SicleConfig& config) {
  const Schedule& schedule = config.schedule;
  const int nf = schedule.nf;
  if (nf < 1) throw std::invalid_argument("segment: nf must be >= 1");
  if (nf > schedule.n0) throw std::invalid_argument("segment: nf exceeds n0");
  if (config.sampling.n0 != schedule.n0)
    throw std::invalid_argument("segment: sampling n0 differs from schedule n0");
  for (const int k : config.emit_scales) {
    if (k < nf || k > schedule.n0)
      throw std::invalid_argument("segment: emit scale outside [nf, n0]");
    if (schedule.mode == Schedule::Mode::Explicit && k != schedule.n0 &&
        std::find(schedule.explicit_scales.begin(), schedule.explicit_scales.end(), k) ==
            schedule.explicit_scales.end())
      throw std::invalid_argument("segment: emit scale not produced by explicit schedule");
  }

  const Topology topology(image.width, image.height);
  if (config.sampling.n0 > topology.vertex_count())
    throw std::invalid_argument("segment: n0 exceeds pixel count");
  const SaliencyMap fallback =
      saliency ? SaliencyMap{} : uniform_saliency(image.width, image.height);
  const SaliencyMap& sal = saliency ? *saliency : fallback;
  if (sal.width != image.width || sal.height != image.height)
    throw std::invalid_argument("segment: saliency dimensions differ");

  std::mt19937_64 rng(config.sampling.rng_seed);
  std::vector<int> seeds = sample_seeds(image.width, image.height, config.sampling);

  // Emit scales pending injection, largest first.
  std::vector<int> pending(config.emit_scales.rbegin(), config.emit_scales.rend());

  SegmentationResult result;
  int iteration = 0;
  while (true) {
    ForestResult forest = run_ift(image, topology, seeds, config.mode, sal);
    const int current = static_cast<int>(seeds.size());
    result.per_iteration_seed_counts.push_back(current);
    ++result.iterations_run;

    if (config.emit_scales.count(current))
      result.scales.emplace(current,
                            detail::label_map_from_forest(forest.forest, image.width, image.height));
    while (!pending.empty() && pending.front() >= current) pending.erase(pending.begin());

    if (current == nf) {
      result.final = detail::label_map_from_forest(forest.forest, image.width, image.height);
      break;
    }

    // Next target from the schedule, skipping iterations whose rounded
    // target does not drop below the current count.
    int next;
    do {
      next = seeds_to_keep(schedule, ++iteration);
    } while (next >= current && next > nf);
    next = std::min(next, current - 1);
    if (!pending.empty() && pending.front() > next) next = pending.front();

    const std::vector<int> survivors =
        select_survivors(forest.stats, config.criterion, next, rng);
    std::vector<int> kept;
    kept.reserve(survivors.size());
    for (const int id : survivors) kept.push_back(seeds[id]);
    seeds = std::move(kept);
  }
  return result;
}

}  // namespace sicle
