#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sicle::pnm {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw PNM raster. P2/P5 are grayscale, P3/P6 are color; samples are
// row-major from the top-left corner, interleaved for color images.
struct Raster {
  char magic = '5';  // '2', '3', '5' or '6'
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> samples;

  int channels() const { return (magic == '3' || magic == '6') ? 3 : 1; }
  bool binary() const { return magic == '5' || magic == '6'; }
  std::size_t sample_count() const {
    return static_cast<std::size_t>(width) * height * channels();
  }
};

namespace detail {

// Next whitespace-separated token, skipping '#' comments.
inline std::string next_token(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF) throw IoError(path + ": malformed header (unexpected end of file)");
  std::string tok;
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

inline int next_int(std::istream& in, const std::string& path) {
  const std::string tok = next_token(in, path);
  try {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError(path + ": malformed header (expected integer, got '" + tok + "')");
  }
}

}  // namespace detail

inline Raster read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open file");

  char p = 0, digit = 0;
  in.get(p);
  in.get(digit);
  if (p != 'P' || (digit != '2' && digit != '3' && digit != '5' && digit != '6'))
    throw IoError(path + ": malformed header (not a P2/P3/P5/P6 file)");

  Raster r;
  r.magic = digit;
  r.width = detail::next_int(in, path);
  r.height = detail::next_int(in, path);
  r.maxval = detail::next_int(in, path);
  if (r.width < 1 || r.height < 1)
    throw IoError(path + ": malformed header (non-positive dimensions)");
  if (r.maxval < 1) throw IoError(path + ": malformed header (maxval < 1)");
  if (r.maxval > 65535) throw IoError(path + ": unsupported maxval " + std::to_string(r.maxval) + " (> 65535)");

  r.samples.resize(r.sample_count());
  if (r.binary()) {
    // Exactly one whitespace byte separates the header from the raster.
    const int bytes = r.maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(r.sample_count() * bytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
      throw IoError(path + ": truncated raster data");
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      r.samples[i] = bytes == 2
                         ? static_cast<std::uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1])
                         : buf[i];
    }
  } else {
    for (auto& s : r.samples) {
      const int v = detail::next_int(in, path);
      if (v < 0 || v > r.maxval)
        throw IoError(path + ": sample value " + std::to_string(v) + " out of range");
      s = static_cast<std::uint16_t>(v);
    }
  }
  return r;
}

inline void write(const Raster& r, const std::string& path) {
  if (r.samples.size() != r.sample_count())
    throw IoError(path + ": raster sample count does not match dimensions");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open file for writing");

  out << 'P' << r.magic << '\n'
      << r.width << ' ' << r.height << '\n'
      << r.maxval << '\n';
  if (r.binary()) {
    const int bytes = r.maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf;
    buf.reserve(r.samples.size() * bytes);
    for (const auto s : r.samples) {
      if (bytes == 2) buf.push_back(static_cast<unsigned char>(s >> 8));
      buf.push_back(static_cast<unsigned char>(s & 0xff));
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  } else {
    const int per_row = r.width * r.channels();
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      out << r.samples[i];
      out << (((i + 1) % per_row == 0) ? '\n' : ' ');
    }
  }
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace sicle::pnm
