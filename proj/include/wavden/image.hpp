#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wavden {

struct PixelTag {};
struct CoeffTag {};

// Row-major grid of real samples. The tag keeps spatial-domain images and
// wavelet coefficient grids from being mixed up by accident; retag() is the
// explicit crossing point.
template <class Tag>
class BasicGrid {
 public:
  BasicGrid(std::size_t width, std::size_t height, double fill = 0.0)
      : width_(width), height_(height) {
    check_dims(width, height);
    if (!std::isfinite(fill)) throw std::invalid_argument("grid: non-finite fill value");
    data_.assign(width * height, fill);
  }

  BasicGrid(std::size_t width, std::size_t height, std::vector<double> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != width * height) {
      throw std::invalid_argument("grid: data length " + std::to_string(data_.size()) +
                                  " does not match " + std::to_string(width) + "x" +
                                  std::to_string(height));
    }
    for (double v : data_) {
      if (!std::isfinite(v)) throw std::invalid_argument("grid: non-finite sample");
    }
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }
  double& operator()(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }

  std::span<const double> samples() const noexcept { return data_; }
  std::span<double> samples() noexcept { return data_; }

  std::span<const double> row(std::size_t y) const noexcept {
    return std::span<const double>(data_).subspan(y * width_, width_);
  }
  std::span<double> row(std::size_t y) noexcept {
    return std::span<double>(data_).subspan(y * width_, width_);
  }

  bool same_shape(const auto& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  template <class OtherTag>
  BasicGrid<OtherTag> retag() const {
    return BasicGrid<OtherTag>(width_, height_, data_);
  }

  friend bool operator==(const BasicGrid&, const BasicGrid&) = default;

 private:
  static void check_dims(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) throw std::invalid_argument("grid: width and height must be >= 1");
  }

  std::size_t width_;
  std::size_t height_;
  std::vector<double> data_;
};

using Image = BasicGrid<PixelTag>;
using CoeffGrid = BasicGrid<CoeffTag>;

// Reflect-101 index mapping: -k -> k, n-1+k -> n-1-k. Valid for any offset;
// repeated reflection handles indices more than one period away and n == 1
// collapses to 0.
inline std::size_t reflect101(std::ptrdiff_t i, std::size_t n) noexcept {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  i %= period;
  if (i < 0) i += period;
  if (i >= static_cast<std::ptrdiff_t>(n)) i = period - i;
  return static_cast<std::size_t>(i);
}

template <class Tag>
BasicGrid<Tag> pad_mirror(const BasicGrid<Tag>& image, std::size_t margin) {
  if (margin >= std::min(image.width(), image.height())) {
    throw std::invalid_argument("pad_mirror: margin " + std::to_string(margin) +
                                " must be smaller than both image dimensions");
  }
  const std::size_t w = image.width() + 2 * margin;
  const std::size_t h = image.height() + 2 * margin;
  const auto m = static_cast<std::ptrdiff_t>(margin);
  BasicGrid<Tag> out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t sy = reflect101(static_cast<std::ptrdiff_t>(y) - m, image.height());
    auto src = image.row(sy);
    auto dst = out.row(y);
    for (std::size_t x = 0; x < w; ++x) {
      dst[x] = src[reflect101(static_cast<std::ptrdiff_t>(x) - m, image.width())];
    }
  }
  return out;
}

template <class Tag>
BasicGrid<Tag> clamp_image(const BasicGrid<Tag>& image, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("clamp_image: lo must not exceed hi");
  BasicGrid<Tag> out = image;
  for (double& s : out.samples()) s = std::clamp(s, lo, hi);
  return out;
}

}  // namespace wavden
