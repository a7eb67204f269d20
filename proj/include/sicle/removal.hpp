#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "sicle/ift.hpp"

namespace sicle {

// Iteration-indexed seed-count targets. Curve mode follows
// N(i) = max(round(N0^(1 - omega*i)), Nf) with omega = 1/(Omega-1);
// Disf mode uses omega = 1/ln(N0), i.e. N(i) = round(N0 * e^-i) clamped;
// Explicit mode walks a user-given strictly decreasing list ending at Nf.
struct Schedule {
  enum class Mode { Curve, Disf, Explicit };

  int n0 = 3000;
  int nf = 100;
  int omega_cap = 5;     // Omega, max iterations (curve mode)
  double decay = 0.25;   // omega
  Mode mode = Mode::Curve;
  std::vector<int> explicit_scales;

  static Schedule curve(int n0, int nf, int omega_cap) {
    if (omega_cap < 2) throw std::invalid_argument("Schedule: omega_cap must be >= 2");
    validate_counts(n0, nf);
    Schedule s;
    s.n0 = n0;
    s.nf = nf;
    s.omega_cap = omega_cap;
    s.decay = 1.0 / (omega_cap - 1);
    s.mode = Mode::Curve;
    return s;
  }

  static Schedule disf(int n0, int nf) {
    validate_counts(n0, nf);
    Schedule s;
    s.n0 = n0;
    s.nf = nf;
    s.omega_cap = 0;
    s.decay = 1.0 / std::log(static_cast<double>(n0));
    s.mode = Mode::Disf;
    return s;
  }

  static Schedule explicit_scales_of(int n0, std::vector<int> scales) {
    if (scales.empty()) throw std::invalid_argument("Schedule: empty scale list");
    for (std::size_t i = 1; i < scales.size(); ++i)
      if (scales[i] >= scales[i - 1])
        throw std::invalid_argument("Schedule: scales must be strictly decreasing");
    validate_counts(n0, scales.back());
    if (scales.front() > n0) throw std::invalid_argument("Schedule: scale exceeds n0");
    Schedule s;
    s.n0 = n0;
    s.nf = scales.back();
    s.mode = Mode::Explicit;
    s.explicit_scales = std::move(scales);
    return s;
  }

 private:
  static void validate_counts(int n0, int nf) {
    if (nf < 1) throw std::invalid_argument("Schedule: nf must be >= 1");
    if (nf > n0) throw std::invalid_argument("Schedule: nf exceeds n0");
  }
};

// Number of seeds kept after removal iteration i (i >= 1).
inline int seeds_to_keep(const Schedule& schedule, int iteration) {
  if (iteration < 1) throw std::invalid_argument("seeds_to_keep: iteration must be >= 1");
  if (schedule.mode == Schedule::Mode::Explicit) {
    const auto& s = schedule.explicit_scales;
    const std::size_t idx = std::min<std::size_t>(iteration - 1, s.size() - 1);
    return s[idx];
  }
  const double exponent = 1.0 - schedule.decay * iteration;
  const double raw = std::pow(static_cast<double>(schedule.n0), exponent);
  const long rounded = std::lround(std::floor(raw + 0.5));  // round-half-up
  return std::max<long>(rounded, schedule.nf);
}

enum class RelevanceBase { Size, MinContrast, MaxContrast, MinSizeContrast, MaxSizeContrast, Random };

struct RelevanceCriterion {
  RelevanceBase base = RelevanceBase::MinSizeContrast;
  bool object_modulated = true;
};

namespace detail {

inline double tree_contrast(const TreeStats& a, const TreeStats& b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.feat_sum.size(); ++c) {
    const double d = a.feat_sum[c] / a.size - b.feat_sum[c] / b.size;
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace detail

// Seed relevance from its tree's aggregates. Isolated trees (empty
// adjacency) get contrast 0. `rng` is consulted only by Random.
inline double relevance(int seed, const std::vector<TreeStats>& stats,
                        const RelevanceCriterion& criterion, std::int64_t total_pixels,
                        std::mt19937_64& rng) {
  const TreeStats& s = stats[seed];
  double base;
  switch (criterion.base) {
    case RelevanceBase::Random: {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      return unit(rng);
    }
    case RelevanceBase::Size:
      base = static_cast<double>(s.size) / static_cast<double>(total_pixels);
      break;
    default: {
      double min_c = std::numeric_limits<double>::infinity();
      double max_c = 0.0;
      for (const int t : s.neighbor_ids) {
        const double g = detail::tree_contrast(s, stats[t]);
        min_c = std::min(min_c, g);
        max_c = std::max(max_c, g);
      }
      if (s.neighbor_ids.empty()) min_c = 0.0;
      const double size_term = static_cast<double>(s.size) / static_cast<double>(total_pixels);
      switch (criterion.base) {
        case RelevanceBase::MinContrast: base = min_c; break;
        case RelevanceBase::MaxContrast: base = max_c; break;
        case RelevanceBase::MinSizeContrast: base = size_term * min_c; break;
        default: base = size_term * max_c; break;  // MaxSizeContrast
      }
    }
  }
  if (!criterion.object_modulated) return base;
  const double mu_o = tree_mean_saliency(s);
  double max_diff = 0.0;
  for (const int t : s.neighbor_ids)
    max_diff = std::max(max_diff, std::fabs(mu_o - tree_mean_saliency(stats[t])));
  return base * std::max(mu_o, max_diff);
}

// Top-`keep` seeds by relevance; ties broken by lower seed id. The result
// is in ascending id order, so surviving seeds keep their relative order.
inline std::vector<int> select_survivors(const std::vector<TreeStats>& stats,
                                         const RelevanceCriterion& criterion, int keep,
                                         std::mt19937_64& rng) {
  const int count = static_cast<int>(stats.size());
  if (keep < 1) throw std::invalid_argument("select_survivors: keep must be >= 1");
  if (keep > count) throw std::invalid_argument("select_survivors: keep exceeds seed count");

  std::int64_t total_pixels = 0;
  for (const auto& s : stats) total_pixels += s.size;

  std::vector<double> scores(count);
  for (int i = 0; i < count; ++i) scores[i] = relevance(i, stats, criterion, total_pixels, rng);

  std::vector<int> ids(count);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  ids.resize(keep);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace sicle
