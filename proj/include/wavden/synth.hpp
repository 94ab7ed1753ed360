#pragma once

// Deterministic synthetic test images for self-contained benchmarks.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "wavden/image.hpp"
#include "wavden/rng.hpp"

namespace wavden::synth {

// Separable Gaussian blur with reflect-101 borders, kernel radius ceil(3 sigma).
inline Image gaussian_blur(const Image& image, double sigma) {
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
    const double v = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = v;
    total += v;
  }
  for (double& k : kernel) k /= total;

  const std::size_t w = image.width();
  const std::size_t h = image.height();
  Image tmp(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i + radius)] *
               image(reflect101(static_cast<std::ptrdiff_t>(x) + i, w), y);
      }
      tmp(x, y) = acc;
    }
  }
  Image out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i + radius)] *
               tmp(x, reflect101(static_cast<std::ptrdiff_t>(y) + i, h));
      }
      out(x, y) = acc;
    }
  }
  return out;
}

// Rounds to the nearest 8-bit level so images survive a PGM round trip unchanged.
inline Image quantize(const Image& image) {
  Image out = clamp_image(image, 0.0, 255.0);
  for (double& v : out.samples()) v = std::round(v);
  return out;
}

// Bilinear upsampling by an integer factor (pixel-centre aligned, reflect-101).
inline Image upsample_bilinear(const Image& small, std::size_t factor) {
  const std::size_t w = small.width() * factor;
  const std::size_t h = small.height() * factor;
  const double f = static_cast<double>(factor);
  Image out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const double fy = (static_cast<double>(y) + 0.5) / f - 0.5;
    const double y0 = std::floor(fy);
    const double ty = fy - y0;
    const std::size_t ya = reflect101(static_cast<std::ptrdiff_t>(y0), small.height());
    const std::size_t yb = reflect101(static_cast<std::ptrdiff_t>(y0) + 1, small.height());
    for (std::size_t x = 0; x < w; ++x) {
      const double fx = (static_cast<double>(x) + 0.5) / f - 0.5;
      const double x0 = std::floor(fx);
      const double tx = fx - x0;
      const std::size_t xa = reflect101(static_cast<std::ptrdiff_t>(x0), small.width());
      const std::size_t xb = reflect101(static_cast<std::ptrdiff_t>(x0) + 1, small.width());
      out(x, y) = (1 - tx) * (1 - ty) * small(xa, ya) + tx * (1 - ty) * small(xb, ya) +
                  (1 - tx) * ty * small(xa, yb) + tx * ty * small(xb, yb);
    }
  }
  return out;
}

// Zero-mean, unit-std texture: one smoothed white-noise layer per octave,
// equal amplitude per octave (the roughly scale-invariant spectrum of
// natural photographs).
inline Image octave_texture(std::size_t size, std::uint64_t seed, int octaves = 6) {
  Image acc(size, size);
  GaussianStream normal(seed);
  for (int o = 0; o < octaves; ++o) {
    const std::size_t factor = std::size_t{1} << o;
    if (size % factor != 0 || size / factor < 4) break;
    Image layer(size / factor, size / factor);
    for (double& v : layer.samples()) v = normal.next();
    layer = gaussian_blur(layer, 1.0);
    if (factor > 1) layer = upsample_bilinear(layer, factor);
    double mean = 0.0;
    for (double v : layer.samples()) mean += v;
    mean /= static_cast<double>(layer.size());
    double var = 0.0;
    for (double v : layer.samples()) var += (v - mean) * (v - mean);
    const double scale = 1.0 / std::sqrt(var / static_cast<double>(layer.size()));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc.samples()[i] += (layer.samples()[i] - mean) * scale;
    }
  }
  double var = 0.0;
  for (double v : acc.samples()) var += v * v;
  const double scale = 1.0 / std::sqrt(var / static_cast<double>(acc.size()));
  for (double& v : acc.samples()) v *= scale;
  return acc;
}

// Stand-in for a natural photograph: shaded gradient background, flat discs
// and rectangles with hard edges, a checkerboard patch, and a multi-octave
// smoothed random texture over everything.
inline Image natural_texture(std::size_t size = 512, std::uint64_t seed = 0x5EED'7E57ULL) {
  const double s = static_cast<double>(size);
  Xoshiro256StarStar gen(seed);
  auto uniform = [&gen](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen.next() >> 11) * 0x1.0p-53);
  };

  Image img(size, size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const double u = static_cast<double>(x) / s;
      const double v = static_cast<double>(y) / s;
      img(x, y) = 80.0 + 60.0 * u + 25.0 * std::sin(2.0 * std::numbers::pi * (0.7 * v + 0.3 * u));
    }
  }

  for (int i = 0; i < 12; ++i) {
    const double cx = uniform(0.0, s);
    const double cy = uniform(0.0, s);
    const double r = uniform(0.04, 0.14) * s;
    const double level = uniform(30.0, 220.0);
    for (std::size_t y = 0; y < size; ++y) {
      for (std::size_t x = 0; x < size; ++x) {
        const double dx = static_cast<double>(x) - cx;
        const double dy = static_cast<double>(y) - cy;
        if (dx * dx + dy * dy <= r * r) img(x, y) = level;
      }
    }
  }
  for (int i = 0; i < 8; ++i) {
    const double x0 = uniform(0.0, s * 0.85);
    const double y0 = uniform(0.0, s * 0.85);
    const double x1 = x0 + uniform(0.05, 0.3) * s;
    const double y1 = y0 + uniform(0.05, 0.3) * s;
    const double level = uniform(30.0, 220.0);
    for (std::size_t y = 0; y < size; ++y) {
      for (std::size_t x = 0; x < size; ++x) {
        const double fx = static_cast<double>(x);
        const double fy = static_cast<double>(y);
        if (fx >= x0 && fx < x1 && fy >= y0 && fy < y1) img(x, y) = level;
      }
    }
  }

  // Checkerboard patch in the lower-right quadrant, 8 px cells.
  const std::size_t patch0 = size * 5 / 8;
  const std::size_t patch1 = size * 7 / 8;
  for (std::size_t y = patch0; y < patch1; ++y) {
    for (std::size_t x = patch0; x < patch1; ++x) {
      img(x, y) = ((x / 8) + (y / 8)) % 2 == 0 ? 70.0 : 170.0;
    }
  }

  const Image texture = octave_texture(size, seed ^ 0xA5A5'A5A5'A5A5'A5A5ULL);
  for (std::size_t i = 0; i < img.size(); ++i) img.samples()[i] += 16.0 * texture.samples()[i];

  return quantize(clamp_image(img, 5.0, 250.0));
}

inline Image gradient(std::size_t width = 256, std::size_t height = 256) {
  Image img(width, height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      img(x, y) = 20.0 + 200.0 * (0.6 * static_cast<double>(x) / static_cast<double>(width - 1) +
                                  0.4 * static_cast<double>(y) / static_cast<double>(height - 1));
    }
  }
  return quantize(img);
}

inline Image checkerboard(std::size_t size = 256, std::size_t cell = 32) {
  Image img(size, size);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const bool dark = ((x / cell) + (y / cell)) % 2 == 0;
      img(x, y) = dark ? 60.0 : 190.0;
    }
  }
  return img;
}

// The synthetic benchmark set, in the order it is written to disk.
inline std::vector<std::pair<std::string, Image>> standard_set() {
  std::vector<std::pair<std::string, Image>> set;
  set.emplace_back("texture512", natural_texture(512));
  set.emplace_back("gradient256", gradient(256, 256));
  set.emplace_back("checker256", checkerboard(256, 32));
  return set;
}

}  // namespace wavden::synth
