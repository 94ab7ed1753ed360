#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "wavden/image.hpp"
#include "wavden/rng.hpp"

namespace wavden {

// Gaussian consistency constant for the median absolute deviation:
// median|N(0,1)| = 0.6745.
inline constexpr double kMadGaussianDivisor = 0.6745;
// Alternative divisor for replication runs that used 0.625.
inline constexpr double kMadAltDivisor = 0.625;

struct NoiseModel {
  double sigma;
  std::uint64_t seed;
};

// Adds i.i.d. N(0, sigma^2) to every pixel in row-major order from a
// GaussianStream seeded with model.seed. The output is not clamped.
inline Image add_awgn(const Image& image, const NoiseModel& model) {
  if (!(model.sigma > 0.0) || !std::isfinite(model.sigma)) {
    throw std::invalid_argument("add_awgn: sigma must be positive and finite");
  }
  Image out = image;
  GaussianStream normal(model.seed);
  for (double& s : out.samples()) s += model.sigma * normal.next();
  return out;
}

inline double median_abs(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("median_abs: empty input");
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](double v) { return std::abs(v); });
  const std::size_t mid = mags.size() / 2;
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid), mags.end());
  const double upper = mags[mid];
  if (mags.size() % 2 == 1) return upper;
  const double lower = *std::max_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// Robust noise level from the finest diagonal detail band: median(|c|) / divisor.
inline double estimate_noise_mad(std::span<const double> finest_hh,
                                 double divisor = kMadGaussianDivisor) {
  if (finest_hh.empty()) throw std::invalid_argument("estimate_noise_mad: empty coefficient grid");
  return median_abs(finest_hh) / divisor;
}

template <class Tag>
double estimate_noise_mad(const BasicGrid<Tag>& finest_hh, double divisor = kMadGaussianDivisor) {
  return estimate_noise_mad(finest_hh.samples(), divisor);
}

}  // namespace wavden
