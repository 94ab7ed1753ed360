#pragma once

// Orthonormal separable 2D Haar transform.
//
// For each 2x2 block [[a, b], [c, d]] (a at even x, even y):
//   ll = (a + b + c + d) / 2      hl = (a - b + c - d) / 2
//   lh = (a + b - c - d) / 2      hh = (a - b - c + d) / 2
// The basis is orthonormal, so white noise keeps the same standard deviation
// in every sub-band and at every level.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavden/image.hpp"

namespace wavden {

enum class Band { ll, lh, hl, hh };

inline const char* band_name(Band b) noexcept {
  switch (b) {
    case Band::ll: return "LL";
    case Band::lh: return "LH";
    case Band::hl: return "HL";
    case Band::hh: return "HH";
  }
  return "?";
}

struct DetailBands {
  CoeffGrid lh;
  CoeffGrid hl;
  CoeffGrid hh;

  CoeffGrid& operator[](Band b) {
    switch (b) {
      case Band::lh: return lh;
      case Band::hl: return hl;
      case Band::hh: return hh;
      case Band::ll: break;
    }
    throw std::invalid_argument("DetailBands: LL is not a detail band");
  }
  const CoeffGrid& operator[](Band b) const { return const_cast<DetailBands&>(*this)[b]; }
};

inline constexpr Band kDetailBands[] = {Band::lh, Band::hl, Band::hh};

struct SubBands {
  CoeffGrid ll;
  DetailBands details;

  std::size_t width() const noexcept { return ll.width(); }
  std::size_t height() const noexcept { return ll.height(); }

  bool consistent() const noexcept {
    return ll.same_shape(details.lh) && ll.same_shape(details.hl) && ll.same_shape(details.hh);
  }
};

// levels[0] is the finest scale (k = 1), levels.back() the coarsest (k = j).
struct Pyramid {
  std::vector<DetailBands> levels;
  CoeffGrid top_ll;
  std::size_t width;
  std::size_t height;

  std::size_t depth() const noexcept { return levels.size(); }
};

template <class Tag>
SubBands dwt2_haar(const BasicGrid<Tag>& grid) {
  if (grid.width() % 2 != 0 || grid.height() % 2 != 0) {
    throw std::invalid_argument("dwt2_haar: dimensions " + std::to_string(grid.width()) + "x" +
                                std::to_string(grid.height()) + " must both be even");
  }
  const std::size_t w = grid.width() / 2;
  const std::size_t h = grid.height() / 2;
  SubBands out{CoeffGrid(w, h), {CoeffGrid(w, h), CoeffGrid(w, h), CoeffGrid(w, h)}};
  for (std::size_t y = 0; y < h; ++y) {
    auto top = grid.row(2 * y);
    auto bottom = grid.row(2 * y + 1);
    auto ll = out.ll.row(y);
    auto lh = out.details.lh.row(y);
    auto hl = out.details.hl.row(y);
    auto hh = out.details.hh.row(y);
    for (std::size_t x = 0; x < w; ++x) {
      const double a = top[2 * x];
      const double b = top[2 * x + 1];
      const double c = bottom[2 * x];
      const double d = bottom[2 * x + 1];
      ll[x] = 0.5 * (a + b + c + d);
      hl[x] = 0.5 * (a - b + c - d);
      lh[x] = 0.5 * (a + b - c - d);
      hh[x] = 0.5 * (a - b - c + d);
    }
  }
  return out;
}

inline CoeffGrid idwt2_haar(const CoeffGrid& ll, const DetailBands& details) {
  if (!ll.same_shape(details.lh) || !ll.same_shape(details.hl) || !ll.same_shape(details.hh)) {
    throw std::invalid_argument("idwt2_haar: sub-band dimensions do not match");
  }
  const std::size_t w = ll.width();
  const std::size_t h = ll.height();
  CoeffGrid out(2 * w, 2 * h);
  for (std::size_t y = 0; y < h; ++y) {
    auto sll = ll.row(y);
    auto slh = details.lh.row(y);
    auto shl = details.hl.row(y);
    auto shh = details.hh.row(y);
    auto top = out.row(2 * y);
    auto bottom = out.row(2 * y + 1);
    for (std::size_t x = 0; x < w; ++x) {
      top[2 * x] = 0.5 * (sll[x] + shl[x] + slh[x] + shh[x]);
      top[2 * x + 1] = 0.5 * (sll[x] - shl[x] + slh[x] - shh[x]);
      bottom[2 * x] = 0.5 * (sll[x] + shl[x] - slh[x] - shh[x]);
      bottom[2 * x + 1] = 0.5 * (sll[x] - shl[x] - slh[x] + shh[x]);
    }
  }
  return out;
}

inline CoeffGrid idwt2_haar(const SubBands& bands) { return idwt2_haar(bands.ll, bands.details); }

inline constexpr int kMaxLevels = 6;

template <class Tag>
Pyramid decompose(const BasicGrid<Tag>& image, int levels) {
  if (levels < 1) throw std::invalid_argument("decompose: levels must be >= 1");
  const std::size_t block = std::size_t{1} << levels;
  if (image.width() % block != 0 || image.height() % block != 0) {
    throw std::invalid_argument("decompose: " + std::to_string(image.width()) + "x" +
                                std::to_string(image.height()) + " is not divisible by 2^" +
                                std::to_string(levels));
  }
  Pyramid p{{}, image.template retag<CoeffTag>(), image.width(), image.height()};
  p.levels.reserve(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    SubBands bands = dwt2_haar(p.top_ll);
    p.levels.push_back(std::move(bands.details));
    p.top_ll = std::move(bands.ll);
  }
  return p;
}

inline void check_pyramid(const Pyramid& p) {
  if (p.levels.empty()) throw std::invalid_argument("reconstruct: pyramid has no levels");
  std::size_t w = p.width;
  std::size_t h = p.height;
  for (std::size_t k = 0; k < p.levels.size(); ++k) {
    if (w % 2 != 0 || h % 2 != 0) throw std::invalid_argument("reconstruct: inconsistent dimensions");
    w /= 2;
    h /= 2;
    const DetailBands& d = p.levels[k];
    for (const CoeffGrid* g : {&d.lh, &d.hl, &d.hh}) {
      if (g->width() != w || g->height() != h) {
        throw std::invalid_argument("reconstruct: level " + std::to_string(k + 1) +
                                    " band dimensions are inconsistent");
      }
    }
  }
  if (p.top_ll.width() != w || p.top_ll.height() != h) {
    throw std::invalid_argument("reconstruct: top LL dimensions are inconsistent");
  }
}

inline Image reconstruct(const Pyramid& p) {
  check_pyramid(p);
  CoeffGrid approx = p.top_ll;
  for (auto it = p.levels.rbegin(); it != p.levels.rend(); ++it) {
    approx = idwt2_haar(approx, *it);
  }
  return approx.retag<PixelTag>();
}

}  // namespace wavden
