#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "wavden/bench.hpp"
#include "wavden/synth.hpp"

using namespace wavden;
using namespace wavden::bench;

namespace {

std::vector<NamedImage> small_set() {
  std::vector<NamedImage> out;
  for (const auto& n : synth::standard_set()) {
    Image crop(64, 64);
    for (std::size_t y = 0; y < 64; ++y) {
      for (std::size_t x = 0; x < 64; ++x) crop(x, y) = n.second(x, y);
    }
    out.push_back({n.first, crop});
  }
  return out;
}

BenchConfig small_config() {
  BenchConfig c;
  c.sigmas = {10, 30};
  c.methods = default_methods();
  c.trials = 2;
  return c;
}

std::string csv_of(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  write_csv(rows, out);
  return out.str();
}

BenchRow row(std::string method, double sigma, double psnr, double uqi = 0.5) {
  return {"img", sigma, std::move(method), 3, 0, 1, 0, 0, 0, psnr, uqi, 0, {}};
}

}  // namespace

TEST(Bench, OneRowPerMethod) {
  BenchConfig c = small_config();
  c.sigmas = {20};
  c.trials = 1;
  const auto images = small_set();
  const auto rows = run_benchmark({images.front()}, c);
  ASSERT_EQ(rows.size(), 7u);
  std::set<std::string> names;
  for (const auto& r : rows) {
    names.insert(r.method);
    EXPECT_TRUE(r.ok()) << r.error;
    EXPECT_GT(r.psnr_db, 20.0);
  }
  EXPECT_EQ(names.size(), 7u);
}

TEST(Bench, CsvIsReproducibleAndIndependentOfWorkers) {
  BenchConfig c = small_config();
  const auto images = small_set();
  const std::string first = csv_of(run_benchmark(images, c));
  EXPECT_EQ(first, csv_of(run_benchmark(images, c)));
  c.jobs = 4;
  EXPECT_EQ(first, csv_of(run_benchmark(images, c)));
}

TEST(Bench, RowOrderFollowsConfiguration) {
  const BenchConfig c = small_config();
  const auto images = small_set();
  const auto rows = run_benchmark(images, c);
  ASSERT_EQ(rows.size(), images.size() * 2 * 7 * 2);
  EXPECT_EQ(rows[0].image_id, images[0].id);
  EXPECT_EQ(rows[1].trial, 1);
  EXPECT_EQ(rows[2].method, "sure");
  EXPECT_EQ(rows[14].sigma, 30);
  EXPECT_EQ(rows[28].image_id, images[1].id);
}

TEST(Bench, CsvHeaderIsExact) {
  const std::string csv = csv_of({});
  EXPECT_EQ(csv, "image_id,sigma,method,levels,trial,seed,mse,rmse,mae,psnr_db,uqi,runtime_ms\n");
}

TEST(Bench, SeedsAreDistinctPerCell) {
  std::set<std::uint64_t> seeds;
  for (double s : {10.0, 20.0}) {
    for (auto m : {"visu", "mrbf"}) {
      for (int t = 0; t < 5; ++t) seeds.insert(derive_seed(1, "lena", s, m, t));
    }
  }
  EXPECT_EQ(seeds.size(), 20u);
  EXPECT_EQ(derive_seed(1, "a", 10, "visu", 0), hash_key(1, "a|10|visu|0"));
  EXPECT_EQ(cell_key("a", 12.5, "bayes", 3), "a|12.5|bayes|3");
}

TEST(Bench, FailedCellsBecomeErrorRows) {
  BenchConfig c = small_config();
  c.sigmas = {10};
  c.trials = 1;
  const auto rows = run_benchmark({{"odd", Image(30, 30, 100.0)}}, c);
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& r : rows) {
    if (r.method == "bilateral") {
      EXPECT_TRUE(r.ok());
    } else {
      EXPECT_FALSE(r.ok());
      EXPECT_TRUE(std::isnan(r.psnr_db));
    }
  }
  const Summary s = summarize(rows);
  EXPECT_EQ(s.error_rows, 6u);
}

TEST(Summary, MeansAndShape) {
  const Summary s = summarize({row("visu", 10, 30), row("visu", 10, 32), row("bayes", 10, 35)});
  ASSERT_NE(s.find("visu", 10), nullptr);
  EXPECT_DOUBLE_EQ(s.find("visu", 10)->mean_psnr_db, 31.0);
  EXPECT_EQ(s.find("visu", 10)->count, 2u);
  EXPECT_EQ(s.find("visu", 20), nullptr);
  EXPECT_THROW(summarize({}), std::invalid_argument);
}

TEST(Summary, PartitionsRowsByMethodAndSigma) {
  std::vector<BenchRow> rows;
  for (const auto& m : kAllMethods) {
    for (double s : {10, 20, 30, 40, 50}) {
      for (int t = 0; t < 3; ++t) rows.push_back(row(std::string(method_name(m)), s, 20 + s / 10 + t));
    }
  }
  const Summary s = summarize(rows);
  EXPECT_EQ(s.methods.size(), 7u);
  EXPECT_EQ(s.sigmas, (std::vector<double>{10, 20, 30, 40, 50}));
  EXPECT_EQ(s.by_method_sigma.size(), 35u);
  std::size_t total = 0;
  for (const auto& c : s.by_method_sigma) total += c.count;
  EXPECT_EQ(total, rows.size());

  std::ostringstream table;
  write_plot_table(s, PlotMetric::psnr, table);
  std::istringstream lines(table.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) ++n;
  EXPECT_EQ(n, 6);
  EXPECT_EQ(table.str().substr(0, 43), "# sigma visu sure bayes neigh bilateral col");
}

TEST(Settings, ParseAndBuildConfig) {
  std::istringstream in(
      "# grid\n"
      "sigmas = 15, 25\n"
      "methods = visu,collaborative\n"
      "levels = 2   # shallow\n"
      "trials = 3\n"
      "seed = 99\n"
      "metrics = unclamped\n"
      "mrbf-schedule = coarsest-only\n");
  const BenchConfig c = config_from_settings(parse_settings(in));
  EXPECT_EQ(c.sigmas, (std::vector<double>{15, 25}));
  ASSERT_EQ(c.methods.size(), 2u);
  EXPECT_EQ(c.methods[1].method, Method::collaborative);
  EXPECT_EQ(c.methods[0].levels, 2);
  EXPECT_EQ(c.trials, 3);
  EXPECT_EQ(c.master_seed, 99u);
  EXPECT_EQ(c.metrics_mode, Scoring::unclamped);
  EXPECT_EQ(c.methods[0].mrbf_schedule, MrbfSchedule::coarsest_only);
  EXPECT_EQ(config_from_settings({}).methods[0].mrbf_schedule, MrbfSchedule::every_level);
}

TEST(Settings, Errors) {
  std::istringstream unknown("colour = red\n");
  EXPECT_THROW(parse_settings(unknown), std::invalid_argument);
  std::istringstream no_eq("sigmas 10\n");
  EXPECT_THROW(parse_settings(no_eq), std::invalid_argument);
  EXPECT_THROW(config_from_settings({{"trials", "three"}}), std::invalid_argument);
  EXPECT_THROW(config_from_settings({{"methods", "median"}}), std::invalid_argument);
  EXPECT_THROW(config_from_settings({{"levels", "9"}}), std::invalid_argument);
  EXPECT_THROW(config_from_settings({{"mrbf-schedule", "sometimes"}}), std::invalid_argument);
}

TEST(Settings, DirectoryExpandsToSortedPgms) {
  const auto dir = std::filesystem::temp_directory_path() / "wavden_expand";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  for (const char* name : {"b.pgm", "a.pgm", "notes.txt"}) std::ofstream(dir / name) << "x";
  const auto paths = expand_image_list(dir.string());
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].filename(), "a.pgm");
  EXPECT_EQ(paths[1].filename(), "b.pgm");
}

TEST(Reports, WritesSiblingFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "wavden_reports";
  std::filesystem::remove_all(dir);
  write_reports({row("visu", 10, 30), row("visu", 10, 32)}, dir / "run.csv");
  for (const char* f : {"run.csv", "run.summary.csv", "run.psnr.dat", "run.uqi.dat"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  std::ifstream in(dir / "run.summary.csv");
  std::string header, first, all;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, all);
  EXPECT_EQ(header, "method,sigma,count,mean_psnr_db,mean_uqi");
  EXPECT_EQ(first, "visu,10,2,31,0.5");
  EXPECT_EQ(all, "visu,all,2,31,0.5");
}
