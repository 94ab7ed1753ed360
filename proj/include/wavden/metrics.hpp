#pragma once

// Full-reference quality metrics: MSE, RMSE, MAE, PSNR and the universal
// quality index (UQI). The peak value is 255 throughout.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavden/image.hpp"

namespace wavden {

inline constexpr double kPeak = 255.0;

enum class Scoring {
  clamped,    // both images clamped to [0, 255] first
  unclamped,  // raw real-valued samples
};

struct ErrorStats {
  double mse;
  double rmse;
  double mae;
};

struct MetricsReport {
  double mse;
  double rmse;
  double mae;
  double psnr_db;  // +infinity when mse == 0
  double uqi;
};

namespace detail {

inline void require_same_shape(const Image& a, const Image& b, const char* who) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                " vs " + std::to_string(b.width()) + "x" +
                                std::to_string(b.height()) + ")");
  }
}

}  // namespace detail

inline ErrorStats mse_rmse_mae(const Image& reference, const Image& test) {
  detail::require_same_shape(reference, test, "mse_rmse_mae");
  const auto a = reference.samples();
  const auto b = test.samples();
  double sq = 0.0;
  double ab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = b[i] - a[i];
    sq += d * d;
    ab += std::abs(d);
  }
  const double n = static_cast<double>(a.size());
  const double mse = sq / n;
  return {mse, std::sqrt(mse), ab / n};
}

inline double psnr_from_mse(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

inline double psnr(const Image& reference, const Image& test, Scoring scoring = Scoring::clamped) {
  detail::require_same_shape(reference, test, "psnr");
  if (scoring == Scoring::clamped) {
    return psnr_from_mse(
        mse_rmse_mae(clamp_image(reference, 0.0, kPeak), clamp_image(test, 0.0, kPeak)).mse);
  }
  return psnr_from_mse(mse_rmse_mae(reference, test).mse);
}

// Global (single-window) UQI:
//   cov / (s_f s_g) * 2 mf mg / (mf^2 + mg^2) * 2 s_f s_g / (s_f^2 + s_g^2)
// with (N-1)-normalized variances and covariance. Degenerate cases:
// identical images -> 1; both constant -> luminance factor alone; exactly one
// constant or zero mean-square denominator -> 0.
inline double uqi(const Image& reference, const Image& test) {
  detail::require_same_shape(reference, test, "uqi");
  if (reference.size() < 2) throw std::invalid_argument("uqi: image must have at least 2 pixels");
  if (reference == test) return 1.0;

  const auto f = reference.samples();
  const auto g = test.samples();
  const double n = static_cast<double>(f.size());
  double sf = 0.0;
  double sg = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sf += f[i];
    sg += g[i];
  }
  const double mf = sf / n;
  const double mg = sg / n;
  double vf = 0.0;
  double vg = 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double df = f[i] - mf;
    const double dg = g[i] - mg;
    vf += df * df;
    vg += dg * dg;
    cov += df * dg;
  }
  vf /= n - 1.0;
  vg /= n - 1.0;
  cov /= n - 1.0;

  const double mean_sq = mf * mf + mg * mg;
  if (mean_sq == 0.0) return 0.0;
  const double luminance = 2.0 * mf * mg / mean_sq;
  if (vf == 0.0 && vg == 0.0) return luminance;
  if (vf == 0.0 || vg == 0.0) return 0.0;

  const double sd_f = std::sqrt(vf);
  const double sd_g = std::sqrt(vg);
  const double correlation = cov / (sd_f * sd_g);
  const double contrast = 2.0 * sd_f * sd_g / (vf + vg);
  return std::clamp(correlation * luminance * contrast, -1.0, 1.0);
}

// Sliding-window UQI: mean of the global index over every block x block
// window (stride 1). Not used by the benchmark unless requested.
inline double uqi_windowed(const Image& reference, const Image& test, std::size_t block = 8) {
  detail::require_same_shape(reference, test, "uqi_windowed");
  if (block < 2 || block > reference.width() || block > reference.height()) {
    throw std::invalid_argument("uqi_windowed: block size does not fit the image");
  }
  double total = 0.0;
  std::size_t count = 0;
  std::vector<double> fa(block * block);
  std::vector<double> ga(block * block);
  for (std::size_t y = 0; y + block <= reference.height(); ++y) {
    for (std::size_t x = 0; x + block <= reference.width(); ++x) {
      for (std::size_t j = 0; j < block; ++j) {
        for (std::size_t i = 0; i < block; ++i) {
          fa[j * block + i] = reference(x + i, y + j);
          ga[j * block + i] = test(x + i, y + j);
        }
      }
      total += uqi(Image(block, block, fa), Image(block, block, ga));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

inline MetricsReport evaluate(const Image& reference, const Image& test,
                              Scoring scoring = Scoring::clamped) {
  detail::require_same_shape(reference, test, "evaluate");
  if (scoring == Scoring::clamped) {
    return evaluate(clamp_image(reference, 0.0, kPeak), clamp_image(test, 0.0, kPeak),
                    Scoring::unclamped);
  }
  const ErrorStats e = mse_rmse_mae(reference, test);
  return {e.mse, e.rmse, e.mae, psnr_from_mse(e.mse), uqi(reference, test)};
}

}  // namespace wavden
