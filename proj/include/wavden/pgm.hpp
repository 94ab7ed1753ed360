#pragma once

// Netpbm graymap I/O: binary P5 and ASCII P2, 8-bit only.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavden/image.hpp"

namespace wavden {

class PgmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void skip_space_and_comments(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == std::char_traits<char>::eof()) return;
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

inline std::size_t read_header_int(std::istream& in, const char* what) {
  skip_space_and_comments(in);
  std::size_t value = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<std::size_t>(in.get() - '0');
    any = true;
    if (value > (1u << 30)) throw PgmError(std::string("pgm: ") + what + " out of range");
  }
  if (!any) throw PgmError(std::string("pgm: malformed header, expected ") + what);
  return value;
}

inline std::uint8_t to_byte(double sample) {
  // std::round rounds half away from zero.
  return static_cast<std::uint8_t>(std::round(std::clamp(sample, 0.0, 255.0)));
}

}  // namespace detail

inline Image read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P') throw PgmError("pgm: missing magic number");
  const bool binary = magic[1] == '5';
  if (!binary && magic[1] != '2') {
    throw PgmError(std::string("pgm: unsupported format P") + magic[1]);
  }

  const std::size_t width = detail::read_header_int(in, "width");
  const std::size_t height = detail::read_header_int(in, "height");
  const std::size_t maxval = detail::read_header_int(in, "maxval");
  if (width == 0 || height == 0) throw PgmError("pgm: zero image dimension");
  if (maxval == 0) throw PgmError("pgm: maxval must be positive");
  if (maxval > 255) throw PgmError("pgm: 16-bit images (maxval > 255) are not supported");

  std::vector<double> data(width * height);
  if (binary) {
    if (!std::isspace(in.get())) throw PgmError("pgm: missing whitespace after maxval");
    std::vector<unsigned char> bytes(data.size());
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
      throw PgmError("pgm: truncated pixel payload");
    }
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      if (bytes[i] > maxval) throw PgmError("pgm: sample exceeds maxval");
      data[i] = bytes[i];
    }
  } else {
    for (double& s : data) {
      detail::skip_space_and_comments(in);
      if (!std::isdigit(in.peek())) throw PgmError("pgm: truncated pixel payload");
      const std::size_t v = detail::read_header_int(in, "sample");
      if (v > maxval) throw PgmError("pgm: sample exceeds maxval");
      s = static_cast<double>(v);
    }
  }
  return Image(width, height, std::move(data));
}

inline Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError("pgm: cannot open " + path.string());
  try {
    return read_pgm(in);
  } catch (const PgmError& e) {
    throw PgmError(std::string(e.what()) + " (" + path.string() + ")");
  }
}

// Writes binary P5 with maxval 255; samples are clamped to [0,255] and rounded
// half away from zero.
inline void write_pgm(const Image& image, std::ostream& out) {
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::vector<char> bytes(image.size());
  auto samples = image.samples();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<char>(detail::to_byte(samples[i]));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline void save_pgm(const Image& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PgmError("pgm: cannot create " + path.string());
  write_pgm(image, out);
  out.flush();
  if (!out) throw PgmError("pgm: write failed for " + path.string());
}

}  // namespace wavden
