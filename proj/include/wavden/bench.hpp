#pragma once

// Benchmark harness: images x noise levels x methods x trials, scored
// against the clean original and written as CSV plus plot-ready tables.
//
// Seed derivation (byte-exact): the cell key is the ASCII string
//   "<image_id>|<sigma>|<method>|<trial>"
// where sigma is printed in shortest round-trip form (std::to_chars) and
// trial is a decimal integer starting at 0. The trial seed is
// hash_key(master_seed, key) from rng.hpp, and the noise field is
// add_awgn(clean, {sigma, seed}).

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "wavden/metrics.hpp"
#include "wavden/noise.hpp"
#include "wavden/pgm.hpp"
#include "wavden/pipelines.hpp"
#include "wavden/rng.hpp"

namespace wavden::bench {

inline constexpr std::string_view kCsvHeader =
    "image_id,sigma,method,levels,trial,seed,mse,rmse,mae,psnr_db,uqi,runtime_ms";

struct NamedImage {
  std::string id;
  Image image;
};

struct BenchConfig {
  std::vector<std::filesystem::path> image_paths;
  std::vector<double> sigmas{10, 20, 30, 40, 50};
  std::vector<MethodConfig> methods;
  int trials = 5;
  std::uint64_t master_seed = 1;
  std::filesystem::path output_path = "bench.csv";
  std::optional<std::filesystem::path> save_images_dir;
  Scoring metrics_mode = Scoring::clamped;
  unsigned jobs = 1;
  bool timing = false;  // off: runtime_ms is written as 0 so reruns are byte-identical
};

struct BenchRow {
  std::string image_id;
  double sigma;
  std::string method;
  int levels;
  int trial;
  std::uint64_t seed;
  double mse;
  double rmse;
  double mae;
  double psnr_db;
  double uqi;
  double runtime_ms;
  std::string error;  // empty for a successful cell

  bool ok() const noexcept { return error.empty(); }
};

inline std::vector<MethodConfig> default_methods(int levels = 3) {
  std::vector<MethodConfig> out;
  for (Method m : kAllMethods) {
    MethodConfig c;
    c.method = m;
    c.levels = levels;
    out.push_back(c);
  }
  return out;
}

inline std::string format_sigma(double sigma) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, sigma);
  return std::string(buf, res.ptr);
}

inline std::string cell_key(std::string_view image_id, double sigma, std::string_view method,
                            int trial) {
  std::string key;
  key.append(image_id).append("|").append(format_sigma(sigma)).append("|");
  key.append(method).append("|").append(std::to_string(trial));
  return key;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view image_id, double sigma,
                                 std::string_view method, int trial) {
  return hash_key(master, cell_key(image_id, sigma, method, trial));
}

inline void validate(const BenchConfig& c, bool need_paths = true) {
  if (need_paths && c.image_paths.empty()) throw std::invalid_argument("bench: no images");
  if (c.sigmas.empty()) throw std::invalid_argument("bench: no sigmas");
  if (c.methods.empty()) throw std::invalid_argument("bench: no methods");
  if (c.trials < 1) throw std::invalid_argument("bench: trials must be >= 1");
  for (double s : c.sigmas) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("bench: sigmas must be positive");
  }
}

// Runs one cell. Failures are returned as error rows.
inline BenchRow run_cell(const NamedImage& img, double sigma, const MethodConfig& method, int trial,
                         const BenchConfig& config) {
  BenchRow row{img.id, sigma, std::string(method_name(method.method)), method.levels, trial,
               derive_seed(config.master_seed, img.id, sigma, method_name(method.method), trial),
               0, 0, 0, 0, 0, 0, {}};
  try {
    const Image noisy = add_awgn(img.image, {sigma, row.seed});
    const auto t0 = std::chrono::steady_clock::now();
    const Image out = denoise(noisy, method, sigma);
    const auto t1 = std::chrono::steady_clock::now();
    const MetricsReport m = evaluate(img.image, out, config.metrics_mode);
    row.mse = m.mse;
    row.rmse = m.rmse;
    row.mae = m.mae;
    row.psnr_db = m.psnr_db;
    row.uqi = m.uqi;
    if (config.timing) row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (config.save_images_dir) {
      save_pgm(out, *config.save_images_dir /
                        (img.id + "_s" + format_sigma(sigma) + "_" + row.method + "_t" +
                         std::to_string(trial) + ".pgm"));
    }
  } catch (const std::exception& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.mse = row.rmse = row.mae = row.psnr_db = row.uqi = nan;
    row.error = e.what();
  }
  return row;
}

// Rows come back ordered by (image, sigma, method, trial) in configuration
// order, independent of the number of workers.
inline std::vector<BenchRow> run_benchmark(const std::vector<NamedImage>& images,
                                           const BenchConfig& config) {
  validate(config, false);
  if (images.empty()) throw std::invalid_argument("bench: no images");
  if (config.save_images_dir) std::filesystem::create_directories(*config.save_images_dir);

  const std::size_t n_sig = config.sigmas.size();
  const std::size_t n_met = config.methods.size();
  const auto n_tri = static_cast<std::size_t>(config.trials);
  const std::size_t total = images.size() * n_sig * n_met * n_tri;
  std::vector<std::optional<BenchRow>> slots(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      std::size_t r = i;
      const std::size_t t = r % n_tri;
      r /= n_tri;
      const std::size_t m = r % n_met;
      r /= n_met;
      const std::size_t s = r % n_sig;
      const std::size_t im = r / n_sig;
      slots[i] = run_cell(images[im], config.sigmas[s], config.methods[m], static_cast<int>(t), config);
    }
  };
  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<BenchRow> rows;
  rows.reserve(total);
  for (auto& slot : slots) rows.push_back(std::move(*slot));
  return rows;
}

inline std::string image_id_for(const std::filesystem::path& p) { return p.stem().string(); }

inline std::vector<NamedImage> load_images(const std::vector<std::filesystem::path>& paths) {
  std::vector<NamedImage> out;
  for (const auto& p : paths) out.push_back({image_id_for(p), load_pgm(p)});
  return out;
}

inline std::vector<BenchRow> run_benchmark(const BenchConfig& config) {
  validate(config);
  return run_benchmark(load_images(config.image_paths), config);
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.image_id << ',' << format_sigma(r.sigma) << ',' << r.method << ',' << r.levels << ','
        << r.trial << ',' << r.seed << ',' << format_number(r.mse) << ','
        << format_number(r.rmse) << ',' << format_number(r.mae) << ','
        << format_number(r.psnr_db) << ',' << format_number(r.uqi) << ','
        << format_number(r.runtime_ms) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Aggregation

struct SummaryCell {
  std::string method;
  std::optional<double> sigma;  // empty: aggregated over all sigmas
  std::size_t count;
  double mean_psnr_db;
  double mean_uqi;
};

struct Summary {
  std::vector<std::string> methods;  // first-appearance order
  std::vector<double> sigmas;        // ascending
  std::vector<SummaryCell> by_method_sigma;
  std::vector<SummaryCell> by_method;
  std::size_t error_rows = 0;

  const SummaryCell* find(std::string_view method, double sigma) const {
    for (const auto& c : by_method_sigma) {
      if (c.method == method && c.sigma == sigma) return &c;
    }
    return nullptr;
  }
};

inline Summary summarize(const std::vector<BenchRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("summarize: no rows");
  Summary s;
  struct Acc {
    std::size_t n = 0;
    double psnr = 0;
    double uqi = 0;
  };
  std::map<std::pair<std::string, double>, Acc> cells;
  std::map<std::string, Acc> per_method;
  for (const BenchRow& r : rows) {
    if (std::find(s.methods.begin(), s.methods.end(), r.method) == s.methods.end()) {
      s.methods.push_back(r.method);
    }
    if (std::find(s.sigmas.begin(), s.sigmas.end(), r.sigma) == s.sigmas.end()) {
      s.sigmas.push_back(r.sigma);
    }
    if (!r.ok()) {
      ++s.error_rows;
      continue;
    }
    for (Acc* a : {&cells[{r.method, r.sigma}], &per_method[r.method]}) {
      ++a->n;
      a->psnr += r.psnr_db;
      a->uqi += r.uqi;
    }
  }
  std::sort(s.sigmas.begin(), s.sigmas.end());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto mean = [nan](double sum, std::size_t n) { return n == 0 ? nan : sum / static_cast<double>(n); };
  for (const auto& m : s.methods) {
    for (double sg : s.sigmas) {
      auto it = cells.find({m, sg});
      if (it == cells.end()) continue;
      s.by_method_sigma.push_back({m, sg, it->second.n, mean(it->second.psnr, it->second.n),
                                   mean(it->second.uqi, it->second.n)});
    }
    const Acc& a = per_method[m];
    s.by_method.push_back({m, std::nullopt, a.n, mean(a.psnr, a.n), mean(a.uqi, a.n)});
  }
  return s;
}

inline void write_summary_csv(const Summary& s, std::ostream& out) {
  out << "method,sigma,count,mean_psnr_db,mean_uqi\n";
  auto line = [&out](const SummaryCell& c) {
    out << c.method << ',' << (c.sigma ? format_sigma(*c.sigma) : std::string("all")) << ','
        << c.count << ',' << format_number(c.mean_psnr_db) << ',' << format_number(c.mean_uqi)
        << '\n';
  };
  for (const auto& c : s.by_method_sigma) line(c);
  for (const auto& c : s.by_method) line(c);
}

enum class PlotMetric { psnr, uqi };

// Whitespace-delimited: one row per sigma, one column per method.
inline void write_plot_table(const Summary& s, PlotMetric metric, std::ostream& out) {
  out << "# sigma";
  for (const auto& m : s.methods) out << ' ' << m;
  out << '\n';
  for (double sg : s.sigmas) {
    out << format_sigma(sg);
    for (const auto& m : s.methods) {
      const SummaryCell* c = s.find(m, sg);
      const double v = c == nullptr ? std::numeric_limits<double>::quiet_NaN()
                                    : (metric == PlotMetric::psnr ? c->mean_psnr_db : c->mean_uqi);
      out << ' ' << format_number(v);
    }
    out << '\n';
  }
}

struct OutputPaths {
  std::filesystem::path rows;
  std::filesystem::path summary;
  std::filesystem::path psnr_table;
  std::filesystem::path uqi_table;
};

inline OutputPaths output_paths(const std::filesystem::path& csv) {
  auto sibling = [&csv](const std::string& suffix) {
    return csv.parent_path() / (csv.stem().string() + suffix);
  };
  return {csv, sibling(".summary.csv"), sibling(".psnr.dat"), sibling(".uqi.dat")};
}

inline void write_reports(const std::vector<BenchRow>& rows, const std::filesystem::path& csv) {
  const OutputPaths paths = output_paths(csv);
  if (paths.rows.has_parent_path()) std::filesystem::create_directories(paths.rows.parent_path());
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };
  {
    auto f = open(paths.rows);
    write_csv(rows, f);
  }
  const Summary s = summarize(rows);
  {
    auto f = open(paths.summary);
    write_summary_csv(s, f);
  }
  {
    auto f = open(paths.psnr_table);
    write_plot_table(s, PlotMetric::psnr, f);
  }
  {
    auto f = open(paths.uqi_table);
    write_plot_table(s, PlotMetric::uqi, f);
  }
}

// ---------------------------------------------------------------------------
// Settings: "key = value" config files and command-line overrides share keys.

using Settings = std::map<std::string, std::string>;

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "images", "sigmas", "methods",    "levels",  "trials", "seed",
      "out",    "save-images", "metrics", "jobs", "timing", "sigma-mode",
      "mrbf-schedule"};
  return keys;
}

inline Settings parse_settings(std::istream& in) {
  Settings s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    s[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return s;
}

inline Settings load_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_settings(in);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("invalid value for " + key + ": '" + value + "'");
  }
  return out;
}

inline std::vector<std::filesystem::path> expand_image_list(const std::string& list) {
  std::vector<std::filesystem::path> out;
  for (const auto& item : split_list(list)) {
    const std::filesystem::path p(item);
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> found;
      for (const auto& e : std::filesystem::directory_iterator(p)) {
        const auto ext = e.path().extension().string();
        if (e.is_regular_file() && (ext == ".pgm" || ext == ".PGM")) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

inline BenchConfig config_from_settings(const Settings& s) {
  BenchConfig c;
  int levels = 3;
  SigmaMode sigma_mode = SigmaMode::estimated;
  MrbfSchedule schedule = MrbfSchedule::every_level;
  std::vector<Method> methods(kAllMethods.begin(), kAllMethods.end());
  for (const auto& [key, value] : s) {
    if (key == "images") {
      c.image_paths = expand_image_list(value);
    } else if (key == "sigmas") {
      c.sigmas.clear();
      for (const auto& v : split_list(value)) c.sigmas.push_back(parse_number<double>(key, v));
    } else if (key == "methods") {
      methods.clear();
      for (const auto& v : split_list(value)) methods.push_back(parse_method(v));
    } else if (key == "levels") {
      levels = parse_number<int>(key, value);
    } else if (key == "trials") {
      c.trials = parse_number<int>(key, value);
    } else if (key == "seed") {
      c.master_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "out") {
      c.output_path = value;
    } else if (key == "save-images") {
      if (!value.empty()) c.save_images_dir = std::filesystem::path(value);
    } else if (key == "metrics") {
      if (value == "clamped") {
        c.metrics_mode = Scoring::clamped;
      } else if (value == "unclamped") {
        c.metrics_mode = Scoring::unclamped;
      } else {
        throw std::invalid_argument("metrics must be clamped or unclamped");
      }
    } else if (key == "jobs") {
      c.jobs = parse_number<unsigned>(key, value);
    } else if (key == "timing") {
      c.timing = value == "1" || value == "true" || value == "yes" || value == "on";
    } else if (key == "sigma-mode") {
      if (value == "estimated") {
        sigma_mode = SigmaMode::estimated;
      } else if (value == "oracle") {
        sigma_mode = SigmaMode::oracle;
      } else {
        throw std::invalid_argument("sigma-mode must be estimated or oracle");
      }
    } else if (key == "mrbf-schedule") {
      schedule = parse_mrbf_schedule(value);
    } else {
      throw std::invalid_argument("unknown setting '" + key + "'");
    }
  }
  c.methods.clear();
  for (Method m : methods) {
    MethodConfig mc;
    mc.method = m;
    mc.levels = levels;
    mc.sigma_mode = sigma_mode;
    mc.mrbf_schedule = schedule;
    validate(mc);
    c.methods.push_back(mc);
  }
  return c;
}

}  // namespace wavden::bench
