#include "skelshrink/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

#include "skelshrink/errors.hpp"

namespace skelshrink {

namespace {

// Next integer token, skipping whitespace and '#' comment lines.
long next_token(std::istream& in, const std::string& path) {
  for (;;) {
    const int c = in.peek();
    if (c == EOF) {
      throw FormatError("pgm_read: truncated header in " + path);
    }
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string dummy;
      std::getline(in, dummy);
      continue;
    }
    break;
  }
  long v = 0;
  if (!(in >> v)) {
    throw FormatError("pgm_read: malformed header token in " + path);
  }
  return v;
}

}  // namespace

haar::CountSignal pgm_read(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw FormatError("pgm_read: cannot open " + path);
  }
  char m0 = 0, m1 = 0;
  f.get(m0);
  f.get(m1);
  if (m0 != 'P' || (m1 != '2' && m1 != '5')) {
    throw FormatError("pgm_read: not a P2/P5 PGM: " + path);
  }
  const bool binary = m1 == '5';
  const long w = next_token(f, path);
  const long h = next_token(f, path);
  const long maxval = next_token(f, path);
  if (w <= 0 || h <= 0) {
    throw FormatError("pgm_read: bad dimensions in " + path);
  }
  if (maxval <= 0 || maxval > 255) {
    throw FormatError("pgm_read: only 8-bit PGM supported: " + path);
  }
  std::vector<std::int64_t> data(static_cast<std::size_t>(w) * h);
  if (binary) {
    f.get();  // single whitespace after maxval
    std::vector<unsigned char> buf(data.size());
    f.read(reinterpret_cast<char*>(buf.data()),
           static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(f.gcount()) != buf.size()) {
      throw FormatError("pgm_read: truncated pixel data in " + path);
    }
    for (std::size_t i = 0; i < buf.size(); ++i) data[i] = buf[i];
  } else {
    for (auto& v : data) {
      const long p = next_token(f, path);
      if (p < 0 || p > maxval) {
        throw FormatError("pgm_read: pixel out of range in " + path);
      }
      v = p;
    }
  }
  return haar::CountSignal::image(std::move(data), static_cast<int>(h),
                                  static_cast<int>(w));
}

void pgm_write(const std::string& path, const haar::RealSignal& img) {
  if (img.ndim != 2) {
    throw FormatError("pgm_write: 2D image required");
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw FormatError("pgm_write: cannot open " + path);
  }
  f << "P5\n" << img.cols << " " << img.rows << "\n255\n";
  std::vector<unsigned char> buf(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const double v = std::round(img.data[i]);
    buf[i] = static_cast<unsigned char>(std::min(255.0, std::max(0.0, v)));
  }
  f.write(reinterpret_cast<const char*>(buf.data()),
          static_cast<std::streamsize>(buf.size()));
  if (!f) {
    throw FormatError("pgm_write: write failed for " + path);
  }
}

void pgm_write(const std::string& path, const haar::CountSignal& img) {
  haar::RealSignal r;
  r.data.assign(img.data.begin(), img.data.end());
  r.rows = img.rows;
  r.cols = img.cols;
  r.ndim = img.ndim;
  pgm_write(path, r);
}

}  // namespace skelshrink
