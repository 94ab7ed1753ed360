#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "wavden/image.hpp"
#include "wavden/pgm.hpp"

using namespace wavden;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "wavden_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

Image read_string(const std::string& s) {
  std::istringstream in(s);
  return read_pgm(in);
}

}  // namespace

TEST(Grid, RejectsBadConstruction) {
  EXPECT_THROW(Image(0, 3), std::invalid_argument);
  EXPECT_THROW(Image(2, 2, std::vector<double>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(Image(1, 2, std::vector<double>{1, std::nan("")}), std::invalid_argument);
}

TEST(Pgm, LoadsBinaryP5) {
  const std::string file = std::string("P5\n2 2\n255\n") + std::string("\x00\x80\xff\x40", 4);
  const Image img = read_string(file);
  EXPECT_EQ(img, Image(2, 2, {0, 128, 255, 64}));
}

TEST(Pgm, LoadsAsciiP2) {
  EXPECT_EQ(read_string("P2\n2 1\n255\n10 20"), Image(2, 1, {10, 20}));
}

TEST(Pgm, SkipsHeaderComments) {
  EXPECT_EQ(read_string("P2\n# made by hand\n2 1 # width height\n# max\n255\n10 20\n"),
            Image(2, 1, {10, 20}));
}

TEST(Pgm, RejectsUnsupportedAndMalformed) {
  EXPECT_THROW(read_string("P6\n1 1\n255\n\x01\x02\x03"), PgmError);
  EXPECT_THROW(read_string("XX"), PgmError);
  EXPECT_THROW(read_string("P5\n2 x\n255\n"), PgmError);
  EXPECT_THROW(read_string("P5\n1 1\n65535\n\x01\x01"), PgmError);
  EXPECT_THROW(read_string(std::string("P5\n2 2\n255\n") + "\x01\x02"), PgmError);
  EXPECT_THROW(read_string("P2\n2 2\n255\n1 2 3"), PgmError);
  EXPECT_THROW(read_string("P2\n1 1\n100\n101"), PgmError);
  EXPECT_THROW(load_pgm(temp_file("does_not_exist.pgm")), PgmError);
}

TEST(Pgm, SaveClampsAndRounds) {
  const auto path = temp_file("clamp.pgm");
  save_pgm(Image(3, 1, {300.0, -5.0, 127.5}), path);
  std::ifstream in(path, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string header = "P5\n3 1\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 3);
  EXPECT_EQ(bytes.substr(0, header.size()), header);
  EXPECT_EQ(static_cast<unsigned char>(bytes[header.size()]), 255);
  EXPECT_EQ(static_cast<unsigned char>(bytes[header.size() + 1]), 0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[header.size() + 2]), 128);
}

TEST(Pgm, RoundTripOfIntegerImagesIsExact) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> level(0, 255);
  std::uniform_int_distribution<std::size_t> dim(1, 40);
  for (int trial = 0; trial < 25; ++trial) {
    Image img(dim(rng), dim(rng));
    for (double& v : img.samples()) v = level(rng);
    const auto path = temp_file("roundtrip.pgm");
    save_pgm(img, path);
    EXPECT_EQ(load_pgm(path), img);
  }
}

TEST(Pgm, RoundTripReproducesClampedRoundedImage) {
  std::mt19937_64 rng(12);
  const Image img = oracle::random_image(9, 7, rng, -40.0, 300.0);
  const auto path = temp_file("real.pgm");
  save_pgm(img, path);
  const Image back = load_pgm(path);
  for (std::size_t i = 0; i < img.size(); ++i) {
    EXPECT_EQ(back.samples()[i], std::round(std::clamp(img.samples()[i], 0.0, 255.0)));
  }
}

TEST(PadMirror, Reflect101) {
  EXPECT_EQ(pad_mirror(Image(3, 1, {1, 2, 3}), 0), Image(3, 1, {1, 2, 3}));
  const Image row(3, 2, {1, 2, 3, 4, 5, 6});
  const Image padded = pad_mirror(row, 1);
  EXPECT_EQ(padded.width(), 5u);
  EXPECT_EQ(padded.height(), 4u);
  // middle rows: 2 1 2 3 2 / 5 4 5 6 5; outer rows mirror without repeating the edge
  EXPECT_EQ(padded, Image(5, 4, {5, 4, 5, 6, 5,
                                 2, 1, 2, 3, 2,
                                 5, 4, 5, 6, 5,
                                 2, 1, 2, 3, 2}));
}

TEST(PadMirror, OneDimensionalExample) {
  // Height 1 admits no margin, so exercise the row rule through a 3x2 pad of width.
  const Image img(3, 2, {1, 2, 3, 1, 2, 3});
  const Image p = pad_mirror(img, 1);
  for (std::size_t y = 0; y < p.height(); ++y) {
    EXPECT_EQ(p(0, y), 2);
    EXPECT_EQ(p(1, y), 1);
    EXPECT_EQ(p(4, y), 2);
  }
}

TEST(PadMirror, RejectsLargeMargin) {
  EXPECT_THROW(pad_mirror(Image(2, 2, {1, 2, 3, 4}), 2), std::invalid_argument);
}

TEST(PadMirror, InteriorPreserved) {
  std::mt19937_64 rng(3);
  const Image img = oracle::random_image(13, 9, rng);
  const Image p = pad_mirror(img, 4);
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) EXPECT_EQ(p(x + 4, y + 4), img(x, y));
  }
}

TEST(Reflect101, HandlesDegenerateAndFarIndices) {
  EXPECT_EQ(reflect101(-3, 1), 0u);
  EXPECT_EQ(reflect101(-1, 4), 1u);
  EXPECT_EQ(reflect101(4, 4), 2u);
  for (long i = -20; i < 20; ++i) {
    EXPECT_EQ(reflect101(i, 3), static_cast<std::size_t>(oracle::mirror(i, 3))) << i;
  }
}

TEST(Clamp, ClampsIntoRange) {
  EXPECT_EQ(clamp_image(Image(3, 1, {-3, 100, 260}), 0, 255), Image(3, 1, {0, 100, 255}));
  const Image in(2, 1, {5, 6});
  EXPECT_EQ(clamp_image(in, 0, 255), in);
  EXPECT_THROW(clamp_image(in, 1, 0), std::invalid_argument);
}

TEST(Clamp, IdempotentAndBounded) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Image img = oracle::random_image(8, 8, rng, -500, 500);
    const Image once = clamp_image(img, -10, 20);
    EXPECT_EQ(clamp_image(once, -10, 20), once);
    for (double v : once.samples()) {
      EXPECT_GE(v, -10);
      EXPECT_LE(v, 20);
    }
  }
}
