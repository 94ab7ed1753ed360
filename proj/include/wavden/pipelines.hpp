#pragma once

// End-to-end denoisers: wavelet shrinkage (decompose, estimate, shrink the
// detail bands, reconstruct), plain bilateral filtering, the collaborative
// BayesShrink -> bilateral chain, and the multiresolution bilateral filter.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wavden/bilateral.hpp"
#include "wavden/image.hpp"
#include "wavden/noise.hpp"
#include "wavden/shrinkage.hpp"
#include "wavden/wavelet.hpp"

namespace wavden {

enum class Method { visu, sure, bayes, neigh, bilateral, collaborative, mrbf };

inline constexpr std::array<Method, 7> kAllMethods = {
    Method::visu,      Method::sure,          Method::bayes, Method::neigh,
    Method::bilateral, Method::collaborative, Method::mrbf};

inline std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::visu: return "visu";
    case Method::sure: return "sure";
    case Method::bayes: return "bayes";
    case Method::neigh: return "neigh";
    case Method::bilateral: return "bilateral";
    case Method::collaborative: return "collab";
    case Method::mrbf: return "mrbf";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (name == method_name(m)) return m;
  }
  if (name == "collaborative") return Method::collaborative;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

inline bool is_wavelet_method(Method m) noexcept { return m != Method::bilateral; }

enum class SigmaMode { estimated, oracle };

// Where the multiresolution bilateral filter applies its bilateral passes.
// The coarsest LL is filtered in every schedule.
enum class MrbfSchedule {
  every_level,          // plus every reconstructed approximation, output included
  coarsest_and_output,  // plus the final full-resolution reconstruction
  inner_levels,         // plus every reconstructed approximation above full resolution
  coarsest_only,
};

inline MrbfSchedule parse_mrbf_schedule(std::string_view name) {
  if (name == "every-level") return MrbfSchedule::every_level;
  if (name == "coarsest-and-output") return MrbfSchedule::coarsest_and_output;
  if (name == "inner-levels") return MrbfSchedule::inner_levels;
  if (name == "coarsest-only") return MrbfSchedule::coarsest_only;
  throw std::invalid_argument("unknown mrbf schedule '" + std::string(name) +
                              "' (every-level, coarsest-and-output, inner-levels, coarsest-only)");
}

enum class CollabSigma {
  reestimate,  // MAD estimate on the BayesShrink output
  reuse,       // the noise estimate of the input image
};

// Instrumentation: which band was touched, and how.
struct BandEvent {
  enum class Kind { shrink, bilateral } kind;
  int level;  // 0 = full-resolution image, k = k-th decomposition level
  Band band;
};

using BandObserver = std::function<void(const BandEvent&)>;

// Smallest range sigma handed to the bilateral filter when the noise estimate
// is zero; small enough that only identical neighbours contribute.
inline constexpr double kMinRangeSigma = 1e-3;

struct MethodConfig {
  Method method = Method::bayes;
  int levels = 3;
  BilateralParams bilateral{};  // sigma_r is derived: range_factor * sigma
  double range_factor = 2.0;
  int neigh_window = 3;
  SigmaMode sigma_mode = SigmaMode::estimated;
  std::optional<ThresholdKind> detail_rule;  // overrides the per-method default
  BayesVariant bayes_variant = BayesVariant::amplitude;
  SureMode sure_mode = SureMode::hybrid;
  double mad_divisor = kMadGaussianDivisor;
  MrbfSchedule mrbf_schedule = MrbfSchedule::every_level;
  CollabSigma collab_sigma = CollabSigma::reuse;
  BandObserver observer;
};

inline void validate(const MethodConfig& c) {
  if (c.levels < 1 || c.levels > kMaxLevels) {
    throw std::invalid_argument("levels must be in [1, " + std::to_string(kMaxLevels) + "], got " +
                                std::to_string(c.levels));
  }
  if (c.neigh_window < 1 || c.neigh_window % 2 == 0) {
    throw std::invalid_argument("neigh_window must be odd and positive");
  }
  if (!(c.range_factor > 0.0)) throw std::invalid_argument("range_factor must be positive");
  if (!(c.mad_divisor > 0.0)) throw std::invalid_argument("mad_divisor must be positive");
  validate(BilateralParams{c.bilateral.sigma_d, 1.0, c.bilateral.window});
}

namespace detail {

inline void notify(const MethodConfig& c, BandEvent::Kind kind, int level, Band band) {
  if (c.observer) c.observer(BandEvent{kind, level, band});
}

// The largest even-sized top-left crop, so odd-sized images still get a
// finest-scale diagonal band.
template <class Tag>
BasicGrid<Tag> even_crop(const BasicGrid<Tag>& g) {
  const std::size_t w = g.width() - g.width() % 2;
  const std::size_t h = g.height() - g.height() % 2;
  if (w == 0 || h == 0) throw std::invalid_argument("noise estimate needs at least a 2x2 image");
  if (w == g.width() && h == g.height()) return g;
  BasicGrid<Tag> out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    auto src = g.row(y);
    std::copy_n(src.begin(), w, out.row(y).begin());
  }
  return out;
}

template <class Tag>
BasicGrid<Tag> bilateral_fitted(const BasicGrid<Tag>& g, const MethodConfig& c, double sigma) {
  BilateralParams p = c.bilateral;
  p.sigma_r = std::max(c.range_factor * sigma, kMinRangeSigma);
  const int limit = static_cast<int>(2 * std::min(g.width(), g.height()) - 1);
  p.window = std::min(p.window, limit);
  return bilateral_filter(g, p);
}

}  // namespace detail

// sigma-hat from the finest diagonal band of a one-level Haar split.
template <class Tag>
double estimate_sigma(const BasicGrid<Tag>& image, double divisor = kMadGaussianDivisor) {
  return estimate_noise_mad(dwt2_haar(detail::even_crop(image)).details.hh, divisor);
}

inline double resolve_sigma(const Image& image, const MethodConfig& c,
                            std::optional<double> oracle_sigma) {
  if (c.sigma_mode == SigmaMode::oracle) {
    if (!oracle_sigma) throw std::invalid_argument("sigma_mode=oracle requires an oracle sigma");
    if (!(*oracle_sigma >= 0.0)) throw std::invalid_argument("oracle sigma must be >= 0");
    return *oracle_sigma;
  }
  return estimate_sigma(image, c.mad_divisor);
}

// Shrinks one detail band with the configured estimator. sigma is the noise
// std in coefficient units; image_size is the pixel count of the full image.
inline CoeffGrid shrink_band(const CoeffGrid& band, Method method, double sigma,
                             std::size_t image_size, const MethodConfig& c) {
  if (sigma == 0.0) return band;
  switch (method) {
    case Method::visu:
      return apply_threshold(band, {c.detail_rule.value_or(ThresholdKind::hard),
                                    visu_threshold(sigma, image_size)});
    case Method::sure:
      return apply_threshold(band, {c.detail_rule.value_or(ThresholdKind::soft),
                                    sure_threshold(band, sigma, c.sure_mode)});
    case Method::bayes:
    case Method::mrbf:
      return apply_threshold(band, {c.detail_rule.value_or(ThresholdKind::soft),
                                    bayes_threshold(band_stats(band, sigma), c.bayes_variant)});
    case Method::neigh: {
      const double t = visu_threshold(sigma, band.size());
      if (c.detail_rule) return apply_threshold(band, {*c.detail_rule, t});
      return neigh_shrink(band, t, c.neigh_window);
    }
    case Method::bilateral:
    case Method::collaborative:
      break;
  }
  throw std::invalid_argument("shrink_band: method has no detail-band estimator");
}

inline Image wavelet_shrink(const Image& image, const MethodConfig& c,
                            std::optional<double> oracle_sigma = std::nullopt) {
  validate(c);
  Pyramid p = decompose(image, c.levels);
  const double sigma = c.sigma_mode == SigmaMode::oracle
                           ? resolve_sigma(image, c, oracle_sigma)
                           : estimate_noise_mad(p.levels.front().hh, c.mad_divisor);
  for (std::size_t k = 0; k < p.levels.size(); ++k) {
    for (Band b : kDetailBands) {
      CoeffGrid& band = p.levels[k][b];
      band = shrink_band(band, c.method, sigma, image.size(), c);
      detail::notify(c, BandEvent::Kind::shrink, static_cast<int>(k + 1), b);
    }
  }
  return reconstruct(p);
}

inline Image bilateral_denoise(const Image& image, const MethodConfig& c,
                               std::optional<double> oracle_sigma = std::nullopt) {
  validate(c);
  const double sigma = resolve_sigma(image, c, oracle_sigma);
  detail::notify(c, BandEvent::Kind::bilateral, 0, Band::ll);
  return detail::bilateral_fitted(image, c, sigma);
}

// BayesShrink followed by a bilateral pass.
inline Image collaborative(const Image& image, const MethodConfig& c,
                           std::optional<double> oracle_sigma = std::nullopt) {
  validate(c);
  MethodConfig bayes = c;
  bayes.method = Method::bayes;
  const Image shrunk = wavelet_shrink(image, bayes, oracle_sigma);
  const double sigma = c.collab_sigma == CollabSigma::reestimate
                           ? estimate_sigma(shrunk, c.mad_divisor)
                           : resolve_sigma(image, c, oracle_sigma);
  detail::notify(c, BandEvent::Kind::bilateral, 0, Band::ll);
  return detail::bilateral_fitted(shrunk, c, sigma);
}

namespace detail {

// One level of the multiresolution bilateral filter. `approx` is the
// approximation at level - 1; the result is its denoised replacement.
inline CoeffGrid mrbf_level(const CoeffGrid& approx, int level, const MethodConfig& c,
                            std::optional<double> oracle_sigma) {
  SubBands bands = dwt2_haar(approx);
  const double sigma = c.sigma_mode == SigmaMode::oracle
                           ? *oracle_sigma
                           : estimate_noise_mad(bands.details.hh, c.mad_divisor);
  for (Band b : kDetailBands) {
    CoeffGrid& band = bands.details[b];
    band = shrink_band(band, Method::bayes, sigma, 0, c);
    notify(c, BandEvent::Kind::shrink, level, b);
  }
  if (level == c.levels) {
    bands.ll = bilateral_fitted(bands.ll, c, sigma);
    notify(c, BandEvent::Kind::bilateral, level, Band::ll);
  } else {
    bands.ll = mrbf_level(bands.ll, level + 1, c, oracle_sigma);
  }
  CoeffGrid out = idwt2_haar(bands);
  const bool is_output = level == 1;
  bool filter = false;
  switch (c.mrbf_schedule) {
    case MrbfSchedule::coarsest_and_output: filter = is_output; break;
    case MrbfSchedule::every_level: filter = true; break;
    case MrbfSchedule::inner_levels: filter = !is_output; break;
    case MrbfSchedule::coarsest_only: break;
  }
  if (filter) {
    out = bilateral_fitted(out, c, sigma);
    notify(c, BandEvent::Kind::bilateral, level - 1, Band::ll);
  }
  return out;
}

}  // namespace detail

// Multiresolution bilateral filter: BayesShrink on the detail bands of every
// level, bilateral filtering of the coarsest approximation, and further
// bilateral passes on reconstructed approximations as selected by the
// schedule (by default every reconstruction, the output included). Each level uses its
// own MAD noise estimate from that level's HH band; sigma_r = range_factor *
// sigma_level, and a pass on a reconstruction uses the sigma of the level it
// was reconstructed from.
inline Image mrbf(const Image& image, const MethodConfig& c,
                  std::optional<double> oracle_sigma = std::nullopt) {
  validate(c);
  const std::size_t block = std::size_t{1} << c.levels;
  if (image.width() % block != 0 || image.height() % block != 0) {
    throw std::invalid_argument("mrbf: image dimensions must be divisible by 2^levels");
  }
  if (c.sigma_mode == SigmaMode::oracle) (void)resolve_sigma(image, c, oracle_sigma);
  return detail::mrbf_level(image.retag<CoeffTag>(), 1, c, oracle_sigma).retag<PixelTag>();
}

inline Image denoise(const Image& image, const MethodConfig& c,
                     std::optional<double> oracle_sigma = std::nullopt) {
  switch (c.method) {
    case Method::visu:
    case Method::sure:
    case Method::bayes:
    case Method::neigh:
      return wavelet_shrink(image, c, oracle_sigma);
    case Method::bilateral:
      return bilateral_denoise(image, c, oracle_sigma);
    case Method::collaborative:
      return collaborative(image, c, oracle_sigma);
    case Method::mrbf:
      return mrbf(image, c, oracle_sigma);
  }
  throw std::invalid_argument("denoise: unknown method");
}

}  // namespace wavden
