#pragma once

// Thresholding rules and the four shrinkage estimators (VisuShrink,
// SureShrink, BayesShrink, NeighShrink). All thresholds are in coefficient
// units and assume an orthonormal transform.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavden/image.hpp"

namespace wavden {

enum class ThresholdKind { hard, soft };

struct ThresholdRule {
  ThresholdKind kind;
  double value;
};

// |x| == t is zeroed by both rules.
inline double threshold_value(double x, ThresholdRule rule) noexcept {
  const double mag = std::abs(x);
  if (!(mag > rule.value)) return 0.0;
  if (rule.kind == ThresholdKind::hard) return x;
  return std::copysign(mag - rule.value, x);
}

template <class Tag>
BasicGrid<Tag> apply_threshold(const BasicGrid<Tag>& band, ThresholdRule rule) {
  if (!(rule.value >= 0.0)) throw std::invalid_argument("apply_threshold: negative threshold");
  BasicGrid<Tag> out = band;
  for (double& c : out.samples()) c = threshold_value(c, rule);
  return out;
}

// Universal threshold sigma * sqrt(2 ln n).
inline double visu_threshold(double sigma, std::size_t n) {
  if (n == 0) throw std::invalid_argument("visu_threshold: n must be >= 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("visu_threshold: sigma must be >= 0");
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

// ---------------------------------------------------------------------------
// SureShrink

enum class SureMode {
  hybrid,  // universal threshold on sparse bands, SURE minimizer otherwise
  pure,    // always the (capped) SURE minimizer
};

struct SureSelection {
  double threshold;     // final threshold, coefficient units
  double candidate;     // SURE minimizer on sigma-normalized data
  bool sparse_fallback; // true when the hybrid test chose the universal threshold
};

// Stein's unbiased risk estimate for soft thresholding of unit-variance data
// at threshold t: n - 2 #{|w| <= t} + sum min(|w|, t)^2. The minimizer is
// searched over {0} u {|w_i|}; ties resolve to the smallest candidate.
inline SureSelection sure_select(std::span<const double> band, double sigma,
                                 SureMode mode = SureMode::hybrid) {
  if (band.empty()) throw std::invalid_argument("sure_threshold: empty band");
  if (!(sigma > 0.0)) throw std::invalid_argument("sure_threshold: sigma must be positive");

  const std::size_t n = band.size();
  const double nd = static_cast<double>(n);
  const double universal = std::sqrt(2.0 * std::log(nd));

  std::vector<double> mags(n);
  std::transform(band.begin(), band.end(), mags.begin(),
                 [sigma](double x) { return std::abs(x / sigma); });
  std::sort(mags.begin(), mags.end());

  if (mode == SureMode::hybrid) {
    double energy = 0.0;
    for (double a : mags) energy += a * a;
    const double sparsity = (energy - nd) / nd;
    const double critical = std::pow(std::log2(nd), 1.5) / std::sqrt(nd);
    if (sparsity <= critical) return {sigma * universal, universal, true};
  }

  // t = 0: only exact zeros are counted as <= t.
  const auto zeros = static_cast<double>(std::upper_bound(mags.begin(), mags.end(), 0.0) - mags.begin());
  double best_t = 0.0;
  double best_risk = nd - 2.0 * zeros;

  double below_sq = 0.0;  // sum of a_i^2 over a_i <= current candidate
  std::size_t i = 0;
  while (i < n) {
    const double t = mags[i];
    std::size_t j = i;
    while (j < n && mags[j] == t) {
      below_sq += mags[j] * mags[j];
      ++j;
    }
    const double count = static_cast<double>(j);
    const double risk = nd - 2.0 * count + below_sq + (nd - count) * t * t;
    if (risk < best_risk) {
      best_risk = risk;
      best_t = t;
    }
    i = j;
  }
  return {sigma * std::min(best_t, universal), best_t, false};
}

inline double sure_threshold(std::span<const double> band, double sigma,
                             SureMode mode = SureMode::hybrid) {
  return sure_select(band, sigma, mode).threshold;
}

template <class Tag>
double sure_threshold(const BasicGrid<Tag>& band, double sigma, SureMode mode = SureMode::hybrid) {
  return sure_threshold(band.samples(), sigma, mode);
}

// ---------------------------------------------------------------------------
// BayesShrink

struct BandStats {
  double sigma_n;   // noise std
  double sigma_w;   // observed std, uncentered: sqrt(mean(w^2))
  double sigma_s;   // signal std, sqrt(max(sigma_w^2 - sigma_n^2, 0))
  std::size_t n;
  double max_abs;   // largest coefficient magnitude; threshold sentinel when sigma_s == 0
};

inline BandStats band_stats(std::span<const double> band, double sigma_n) {
  if (band.empty()) throw std::invalid_argument("band_stats: empty band");
  if (!(sigma_n >= 0.0)) throw std::invalid_argument("band_stats: sigma_n must be >= 0");
  double sum_sq = 0.0;
  double max_abs = 0.0;
  for (double w : band) {
    sum_sq += w * w;
    max_abs = std::max(max_abs, std::abs(w));
  }
  const double var_w = sum_sq / static_cast<double>(band.size());
  const double sigma_s = std::sqrt(std::max(var_w - sigma_n * sigma_n, 0.0));
  return {sigma_n, std::sqrt(var_w), sigma_s, band.size(), max_abs};
}

template <class Tag>
BandStats band_stats(const BasicGrid<Tag>& band, double sigma_n) {
  return band_stats(band.samples(), sigma_n);
}

enum class BayesVariant {
  amplitude,       // sigma_n^2 / sigma_s
  squared_signal,  // sigma_n^2 / sigma_s^2
};

inline double bayes_threshold(const BandStats& stats, BayesVariant variant = BayesVariant::amplitude) {
  if (!(stats.sigma_n >= 0.0)) throw std::invalid_argument("bayes_threshold: sigma_n must be >= 0");
  if (stats.sigma_n == 0.0) return 0.0;
  if (stats.sigma_s == 0.0) return stats.max_abs;
  const double noise_var = stats.sigma_n * stats.sigma_n;
  return variant == BayesVariant::amplitude ? noise_var / stats.sigma_s
                                            : noise_var / (stats.sigma_s * stats.sigma_s);
}

// ---------------------------------------------------------------------------
// NeighShrink

// Each coefficient is scaled by max(1 - T^2 / S^2, 0), S^2 being the sum of
// squares over the window centred on it (reflect-101 at band borders).
template <class Tag>
BasicGrid<Tag> neigh_shrink(const BasicGrid<Tag>& band, double t_universal, int window = 3) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("neigh_shrink: window must be odd and positive, got " +
                                std::to_string(window));
  }
  if (!(t_universal >= 0.0)) throw std::invalid_argument("neigh_shrink: negative threshold");
  if (t_universal == 0.0) return band;

  const std::size_t w = band.width();
  const std::size_t h = band.height();
  const std::ptrdiff_t half = window / 2;
  const double t2 = t_universal * t_universal;

  std::vector<double> sq(band.size());
  std::transform(band.samples().begin(), band.samples().end(), sq.begin(),
                 [](double v) { return v * v; });

  // Column indices are reused by every row.
  std::vector<std::size_t> cols(w * static_cast<std::size_t>(window));
  for (std::size_t x = 0; x < w; ++x) {
    for (std::ptrdiff_t d = -half; d <= half; ++d) {
      cols[x * static_cast<std::size_t>(window) + static_cast<std::size_t>(d + half)] =
          reflect101(static_cast<std::ptrdiff_t>(x) + d, w);
    }
  }

  BasicGrid<Tag> out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double s2 = 0.0;
      for (std::ptrdiff_t dy = -half; dy <= half; ++dy) {
        const std::size_t yy = reflect101(static_cast<std::ptrdiff_t>(y) + dy, h);
        const double* srow = sq.data() + yy * w;
        const std::size_t* c = cols.data() + x * static_cast<std::size_t>(window);
        for (int k = 0; k < window; ++k) s2 += srow[c[k]];
      }
      const double gamma = s2 > 0.0 ? std::max(1.0 - t2 / s2, 0.0) : 0.0;
      out(x, y) = gamma * band(x, y);
    }
  }
  return out;
}

}  // namespace wavden
