#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavden/image.hpp"

namespace wavden {

struct BilateralParams {
  double sigma_d = 1.8;   // spatial fall-off, pixels
  double sigma_r = 20.0;  // range fall-off, luminance units
  int window = 11;        // side length, odd
};

inline void validate(const BilateralParams& p) {
  if (p.window < 1 || p.window % 2 == 0) {
    throw std::invalid_argument("bilateral: window must be odd and positive, got " +
                                std::to_string(p.window));
  }
  if (!(p.sigma_d > 0.0) || !(p.sigma_r > 0.0)) {
    throw std::invalid_argument("bilateral: sigma_d and sigma_r must be positive");
  }
}

// Direct bilateral filter. Each output pixel is the normalized sum over the
// window of exp(-|y-x|^2 / 2 sd^2) * exp(-(I(y)-I(x))^2 / 2 sr^2) * I(y),
// with reflect-101 borders and squared Euclidean pixel distance.
template <class Tag>
BasicGrid<Tag> bilateral_filter(const BasicGrid<Tag>& image, const BilateralParams& params) {
  validate(params);
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  const auto win = static_cast<std::size_t>(params.window);
  if (win > 2 * std::min(w, h) - 1) {
    throw std::invalid_argument("bilateral: window " + std::to_string(win) + " too large for " +
                                std::to_string(w) + "x" + std::to_string(h) + " image");
  }
  const std::size_t r = win / 2;
  const BasicGrid<Tag> padded = pad_mirror(image, r);
  const std::size_t pw = padded.width();

  std::vector<double> spatial(win * win);
  const double inv_2sd2 = 1.0 / (2.0 * params.sigma_d * params.sigma_d);
  for (std::size_t dy = 0; dy < win; ++dy) {
    for (std::size_t dx = 0; dx < win; ++dx) {
      const double ox = static_cast<double>(dx) - static_cast<double>(r);
      const double oy = static_cast<double>(dy) - static_cast<double>(r);
      spatial[dy * win + dx] = std::exp(-(ox * ox + oy * oy) * inv_2sd2);
    }
  }
  const double inv_2sr2 = 1.0 / (2.0 * params.sigma_r * params.sigma_r);

  const auto src = padded.samples();
  BasicGrid<Tag> out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    auto dst = out.row(y);
    for (std::size_t x = 0; x < w; ++x) {
      const double centre = src[(y + r) * pw + (x + r)];
      double num = 0.0;
      double den = 0.0;
      for (std::size_t dy = 0; dy < win; ++dy) {
        const double* prow = src.data() + (y + dy) * pw + x;
        const double* srow = spatial.data() + dy * win;
        for (std::size_t dx = 0; dx < win; ++dx) {
          const double v = prow[dx];
          const double diff = v - centre;
          const double weight = srow[dx] * std::exp(-diff * diff * inv_2sr2);
          num += weight * v;
          den += weight;
        }
      }
      // den >= 1: the centre tap always has weight exp(0) * exp(0).
      dst[x] = num / den;
    }
  }
  return out;
}

}  // namespace wavden
