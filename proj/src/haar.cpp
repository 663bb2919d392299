#include "skelshrink/haar.hpp"

#include <cmath>
#include <cstdlib>
#include <type_traits>
#include <utility>

#include "skelshrink/errors.hpp"

namespace skelshrink::haar {

namespace {

template <typename T>
void level_decimated(const std::vector<T>& prev, std::vector<T>& detail,
                     std::vector<T>& scale) {
  std::size_t n = prev.size();
  const T* src = prev.data();
  std::vector<T> padded;
  if (n % 2 != 0) {  // periodic wrap by one sample
    padded = prev;
    padded.push_back(prev[0]);
    src = padded.data();
    ++n;
  }
  detail.resize(n / 2);
  scale.resize(n / 2);
  for (std::size_t i = 0; i < n / 2; ++i) {
    detail[i] = src[2 * i] - src[2 * i + 1];
    scale[i] = src[2 * i] + src[2 * i + 1];
  }
}

template <typename T>
std::vector<T> level_decimated_inverse(const std::vector<T>& detail,
                                       const std::vector<T>& scale) {
  if (detail.size() != scale.size()) {
    throw MalformedPyramidError("inverse: detail/scale length mismatch");
  }
  std::vector<T> prev(2 * detail.size());
  for (std::size_t i = 0; i < detail.size(); ++i) {
    if constexpr (std::is_integral_v<T>) {
      if (((scale[i] - detail[i]) & 1) != 0) {
        throw MalformedPyramidError("inverse: parity violation");
      }
      prev[2 * i] = (scale[i] + detail[i]) / 2;
      prev[2 * i + 1] = (scale[i] - detail[i]) / 2;
    } else {
      prev[2 * i] = (scale[i] + detail[i]) / T(2);
      prev[2 * i + 1] = (scale[i] - detail[i]) / T(2);
    }
  }
  return prev;
}

template <typename T>
void level_undecimated(const std::vector<T>& prev, std::int64_t lag,
                       std::vector<T>& detail, std::vector<T>& scale) {
  const std::size_t n = prev.size();
  detail.resize(n);
  scale.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + static_cast<std::size_t>(lag)) % n;
    detail[i] = prev[i] - prev[j];
    scale[i] = prev[i] + prev[j];
  }
}

// Average of the two redundant single-level inverses; exact for unmodified
// coefficients, uniform cycle-spin recombination otherwise.
template <typename T>
std::vector<T> level_undecimated_inverse(const std::vector<T>& detail,
                                         const std::vector<T>& scale,
                                         std::int64_t lag) {
  const std::size_t n = detail.size();
  std::vector<T> prev(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + n - static_cast<std::size_t>(lag) % n) % n;
    const T num = scale[i] + detail[i] + scale[j] - detail[j];
    if constexpr (std::is_integral_v<T>) {
      if (num % 4 != 0) {
        throw MalformedPyramidError("inverse: coefficients not integer-consistent");
      }
      prev[i] = num / 4;
    } else {
      prev[i] = num / T(4);
    }
  }
  return prev;
}

// 2D helpers operate on row-major rows x cols grids. "cols pass" pairs along
// the column index, "rows pass" along the row index.

template <typename T>
void pair_cols_decimated(const std::vector<T>& a, int rows, int cols,
                         std::vector<T>& low, std::vector<T>& high) {
  low.resize(static_cast<std::size_t>(rows) * (cols / 2));
  high.resize(low.size());
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < cols / 2; ++j) {
      const T u = a[static_cast<std::size_t>(r) * cols + 2 * j];
      const T v = a[static_cast<std::size_t>(r) * cols + 2 * j + 1];
      low[static_cast<std::size_t>(r) * (cols / 2) + j] = u + v;
      high[static_cast<std::size_t>(r) * (cols / 2) + j] = u - v;
    }
  }
}

template <typename T>
void pair_rows_decimated(const std::vector<T>& a, int rows, int cols,
                         std::vector<T>& low, std::vector<T>& high) {
  low.resize(static_cast<std::size_t>(rows / 2) * cols);
  high.resize(low.size());
  for (int i = 0; i < rows / 2; ++i) {
    for (int c = 0; c < cols; ++c) {
      const T u = a[static_cast<std::size_t>(2 * i) * cols + c];
      const T v = a[static_cast<std::size_t>(2 * i + 1) * cols + c];
      low[static_cast<std::size_t>(i) * cols + c] = u + v;
      high[static_cast<std::size_t>(i) * cols + c] = u - v;
    }
  }
}

template <typename T>
T halve(T sum_or_diff) {
  if constexpr (std::is_integral_v<T>) {
    if ((sum_or_diff & 1) != 0) {
      throw MalformedPyramidError("inverse: parity violation");
    }
    return sum_or_diff / 2;
  } else {
    return sum_or_diff / T(2);
  }
}

template <typename T>
std::vector<T> unpair_rows_decimated(const std::vector<T>& low,
                                     const std::vector<T>& high, int out_rows,
                                     int cols) {
  std::vector<T> a(static_cast<std::size_t>(out_rows) * cols);
  for (int i = 0; i < out_rows / 2; ++i) {
    for (int c = 0; c < cols; ++c) {
      const T l = low[static_cast<std::size_t>(i) * cols + c];
      const T h = high[static_cast<std::size_t>(i) * cols + c];
      a[static_cast<std::size_t>(2 * i) * cols + c] = halve<T>(l + h);
      a[static_cast<std::size_t>(2 * i + 1) * cols + c] = halve<T>(l - h);
    }
  }
  return a;
}

template <typename T>
std::vector<T> unpair_cols_decimated(const std::vector<T>& low,
                                     const std::vector<T>& high, int rows,
                                     int out_cols) {
  std::vector<T> a(static_cast<std::size_t>(rows) * out_cols);
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < out_cols / 2; ++j) {
      const T l = low[static_cast<std::size_t>(r) * (out_cols / 2) + j];
      const T h = high[static_cast<std::size_t>(r) * (out_cols / 2) + j];
      a[static_cast<std::size_t>(r) * out_cols + 2 * j] = halve<T>(l + h);
      a[static_cast<std::size_t>(r) * out_cols + 2 * j + 1] = halve<T>(l - h);
    }
  }
  return a;
}

template <typename T>
void lag_cols_undecimated(const std::vector<T>& a, int rows, int cols,
                          std::int64_t lag, std::vector<T>& low,
                          std::vector<T>& high) {
  low.resize(a.size());
  high.resize(a.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      const std::size_t j = static_cast<std::size_t>(r) * cols +
                            (c + static_cast<int>(lag)) % cols;
      low[i] = a[i] + a[j];
      high[i] = a[i] - a[j];
    }
  }
}

template <typename T>
void lag_rows_undecimated(const std::vector<T>& a, int rows, int cols,
                          std::int64_t lag, std::vector<T>& low,
                          std::vector<T>& high) {
  low.resize(a.size());
  high.resize(a.size());
  for (int r = 0; r < rows; ++r) {
    const int r2 = (r + static_cast<int>(lag)) % rows;
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      const std::size_t j = static_cast<std::size_t>(r2) * cols + c;
      low[i] = a[i] + a[j];
      high[i] = a[i] - a[j];
    }
  }
}

template <typename T>
T quarter(T num) {
  if constexpr (std::is_integral_v<T>) {
    if (num % 4 != 0) {
      throw MalformedPyramidError("inverse: coefficients not integer-consistent");
    }
    return num / 4;
  } else {
    return num / T(4);
  }
}

template <typename T>
std::vector<T> unlag_rows_undecimated(const std::vector<T>& low,
                                      const std::vector<T>& high, int rows,
                                      int cols, std::int64_t lag) {
  std::vector<T> a(low.size());
  for (int r = 0; r < rows; ++r) {
    const int rm = (r + rows - static_cast<int>(lag) % rows) % rows;
    for (int c = 0; c < cols; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      const std::size_t j = static_cast<std::size_t>(rm) * cols + c;
      a[i] = quarter<T>(low[i] + high[i] + low[j] - high[j]);
    }
  }
  return a;
}

template <typename T>
std::vector<T> unlag_cols_undecimated(const std::vector<T>& low,
                                      const std::vector<T>& high, int rows,
                                      int cols, std::int64_t lag) {
  std::vector<T> a(low.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int cm = (c + cols - static_cast<int>(lag) % cols) % cols;
      const std::size_t i = static_cast<std::size_t>(r) * cols + c;
      const std::size_t j = static_cast<std::size_t>(r) * cols + cm;
      a[i] = quarter<T>(low[i] + high[i] + low[j] - high[j]);
    }
  }
  return a;
}

template <typename T>
std::vector<T> pad_to_even_2d(std::vector<T> a, int& rows, int& cols) {
  if (cols % 2 != 0) {
    std::vector<T> b(static_cast<std::size_t>(rows) * (cols + 1));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        b[static_cast<std::size_t>(r) * (cols + 1) + c] =
            a[static_cast<std::size_t>(r) * cols + c];
      }
      b[static_cast<std::size_t>(r) * (cols + 1) + cols] =
          a[static_cast<std::size_t>(r) * cols];  // wrap first column
    }
    a = std::move(b);
    ++cols;
  }
  if (rows % 2 != 0) {
    a.resize(static_cast<std::size_t>(rows + 1) * cols);
    for (int c = 0; c < cols; ++c) {
      a[static_cast<std::size_t>(rows) * cols + c] = a[c];  // wrap first row
    }
    ++rows;
  }
  return a;
}

template <typename T>
std::vector<T> crop_2d(const std::vector<T>& a, int rows, int cols,
                       int out_rows, int out_cols) {
  if (rows == out_rows && cols == out_cols) return a;
  std::vector<T> b(static_cast<std::size_t>(out_rows) * out_cols);
  for (int r = 0; r < out_rows; ++r) {
    for (int c = 0; c < out_cols; ++c) {
      b[static_cast<std::size_t>(r) * out_cols + c] =
          a[static_cast<std::size_t>(r) * cols + c];
    }
  }
  return b;
}

template <typename T>
BasicPyramid<T> decompose_impl(std::vector<T> cur, int rows, int cols,
                               int ndim, int levels, Mode mode) {
  if (levels < 1) {
    throw UsageError("decompose: levels must be >= 1");
  }
  BasicPyramid<T> pyr;
  pyr.mode = mode;
  pyr.ndim = ndim;
  pyr.levels = levels;
  pyr.in_rows = rows;
  pyr.in_cols = cols;

  for (int k = 1; k <= levels; ++k) {
    pyr.pre_pad_shape.emplace_back(rows, cols);
    std::vector<Band<T>> bands;
    if (mode == Mode::decimated) {
      if (ndim == 1) {
        if (cols < 2) {
          throw LevelOverflowError("decompose: signal too short for level depth");
        }
        Band<T> b;
        level_decimated(cur, b.detail, b.scale);
        b.rows = 1;
        b.cols = static_cast<int>(b.detail.size());
        cur = b.scale;
        cols = b.cols;
        bands.push_back(std::move(b));
      } else {
        if (rows < 2 || cols < 2) {
          throw LevelOverflowError("decompose: image too small for level depth");
        }
        cur = pad_to_even_2d(std::move(cur), rows, cols);
        std::vector<T> low, high, ll, lh, hl, hh;
        pair_cols_decimated(cur, rows, cols, low, high);
        pair_rows_decimated(low, rows, cols / 2, ll, lh);
        pair_rows_decimated(high, rows, cols / 2, hl, hh);
        const int hr = rows / 2, hc = cols / 2;
        for (auto* d : {&lh, &hl, &hh}) {
          Band<T> b;
          b.detail = std::move(*d);
          b.scale = ll;
          b.rows = hr;
          b.cols = hc;
          bands.push_back(std::move(b));
        }
        cur = ll;
        rows = hr;
        cols = hc;
      }
    } else {
      const std::int64_t lag = std::int64_t(1) << (k - 1);
      if (ndim == 1) {
        if (lag >= cols) {
          throw LevelOverflowError("decompose: lag exceeds signal length");
        }
        Band<T> b;
        level_undecimated(cur, lag, b.detail, b.scale);
        b.rows = 1;
        b.cols = cols;
        cur = b.scale;
        bands.push_back(std::move(b));
      } else {
        if (lag >= rows || lag >= cols) {
          throw LevelOverflowError("decompose: lag exceeds image extent");
        }
        std::vector<T> low, high, ll, lh, hl, hh;
        lag_cols_undecimated(cur, rows, cols, lag, low, high);
        lag_rows_undecimated(low, rows, cols, lag, ll, lh);
        lag_rows_undecimated(high, rows, cols, lag, hl, hh);
        for (auto* d : {&lh, &hl, &hh}) {
          Band<T> b;
          b.detail = std::move(*d);
          b.scale = ll;
          b.rows = rows;
          b.cols = cols;
          bands.push_back(std::move(b));
        }
        cur = ll;
      }
    }
    pyr.detail.push_back(std::move(bands));
  }
  pyr.coarse = std::move(cur);
  pyr.coarse_rows = rows;
  pyr.coarse_cols = cols;
  return pyr;
}

template <typename T>
std::vector<T> reconstruct_impl(const BasicPyramid<T>& pyr, int& rows,
                                int& cols) {
  std::vector<T> cur = pyr.coarse;
  rows = pyr.coarse_rows;
  cols = pyr.coarse_cols;
  for (int k = pyr.levels; k >= 1; --k) {
    const auto& bands = pyr.detail[static_cast<std::size_t>(k - 1)];
    const auto [pre_rows, pre_cols] = pyr.pre_pad_shape[k - 1];
    if (pyr.mode == Mode::decimated) {
      if (pyr.ndim == 1) {
        cur = level_decimated_inverse(bands[0].detail, cur);
        cur.resize(pre_cols);
        cols = pre_cols;
      } else {
        const int fr = rows * 2, fc = cols * 2;
        std::vector<T> low = unpair_rows_decimated(cur, bands[0].detail, fr, cols);
        std::vector<T> high =
            unpair_rows_decimated(bands[1].detail, bands[2].detail, fr, cols);
        cur = unpair_cols_decimated(low, high, fr, fc);
        cur = crop_2d(cur, fr, fc, pre_rows, pre_cols);
        rows = pre_rows;
        cols = pre_cols;
      }
    } else {
      const std::int64_t lag = std::int64_t(1) << (k - 1);
      if (pyr.ndim == 1) {
        cur = level_undecimated_inverse(bands[0].detail, cur, lag);
      } else {
        std::vector<T> low =
            unlag_rows_undecimated(cur, bands[0].detail, rows, cols, lag);
        std::vector<T> high = unlag_rows_undecimated(
            bands[1].detail, bands[2].detail, rows, cols, lag);
        cur = unlag_cols_undecimated(low, high, rows, cols, lag);
      }
    }
  }
  return cur;
}

}  // namespace

CountSignal CountSignal::vector(std::vector<std::int64_t> v) {
  CountSignal s;
  s.cols = static_cast<int>(v.size());
  s.rows = 1;
  s.ndim = 1;
  s.data = std::move(v);
  return s;
}

CountSignal CountSignal::image(std::vector<std::int64_t> v, int rows,
                               int cols) {
  CountSignal s;
  s.rows = rows;
  s.cols = cols;
  s.ndim = 2;
  s.data = std::move(v);
  return s;
}

void CountSignal::validate() const {
  if (ndim != 1 && ndim != 2) {
    throw ParameterDomainError("CountSignal: ndim must be 1 or 2");
  }
  const std::size_t expect =
      static_cast<std::size_t>(ndim == 1 ? 1 : rows) * cols;
  if (data.size() != expect || cols <= 0 || (ndim == 2 && rows <= 0)) {
    throw ParameterDomainError("CountSignal: shape/data size mismatch");
  }
  for (const auto v : data) {
    if (v < 0) {
      throw ParameterDomainError("CountSignal: counts must be nonnegative");
    }
  }
}

void forward_level_decimated(const std::vector<std::int64_t>& prev,
                             std::vector<std::int64_t>& detail,
                             std::vector<std::int64_t>& scale) {
  level_decimated(prev, detail, scale);
}

std::vector<std::int64_t> inverse_level_decimated(
    const std::vector<std::int64_t>& detail,
    const std::vector<std::int64_t>& scale) {
  return level_decimated_inverse(detail, scale);
}

void forward_level_undecimated(const std::vector<std::int64_t>& prev,
                               std::int64_t lag,
                               std::vector<std::int64_t>& detail,
                               std::vector<std::int64_t>& scale) {
  if (lag < 1) {
    throw ParameterDomainError("forward_level_undecimated: lag must be >= 1");
  }
  level_undecimated(prev, lag, detail, scale);
}

Pyramid decompose(const CountSignal& g, int levels, Mode mode) {
  g.validate();
  return decompose_impl(g.data, g.ndim == 1 ? 1 : g.rows, g.cols, g.ndim,
                        levels, mode);
}

RealPyramid decompose(const RealSignal& g, int levels, Mode mode) {
  return decompose_impl(g.data, g.ndim == 1 ? 1 : g.rows, g.cols, g.ndim,
                        levels, mode);
}

CountSignal reconstruct(const Pyramid& pyr) {
  int rows = 0, cols = 0;
  auto data = reconstruct_impl(pyr, rows, cols);
  CountSignal out;
  out.data = std::move(data);
  out.rows = rows;
  out.cols = cols;
  out.ndim = pyr.ndim;
  return out;
}

RealSignal reconstruct(const RealPyramid& pyr) {
  int rows = 0, cols = 0;
  auto data = reconstruct_impl(pyr, rows, cols);
  RealSignal out;
  out.data = std::move(data);
  out.rows = rows;
  out.cols = cols;
  out.ndim = pyr.ndim;
  return out;
}

RealPyramid to_real(const Pyramid& pyr) {
  RealPyramid r;
  r.mode = pyr.mode;
  r.ndim = pyr.ndim;
  r.levels = pyr.levels;
  r.in_rows = pyr.in_rows;
  r.in_cols = pyr.in_cols;
  r.coarse_rows = pyr.coarse_rows;
  r.coarse_cols = pyr.coarse_cols;
  r.pre_pad_shape = pyr.pre_pad_shape;
  r.coarse.assign(pyr.coarse.begin(), pyr.coarse.end());
  for (const auto& bands : pyr.detail) {
    std::vector<Band<double>> rb;
    for (const auto& b : bands) {
      Band<double> d;
      d.detail.assign(b.detail.begin(), b.detail.end());
      d.scale.assign(b.scale.begin(), b.scale.end());
      d.rows = b.rows;
      d.cols = b.cols;
      rb.push_back(std::move(d));
    }
    r.detail.push_back(std::move(rb));
  }
  return r;
}

}  // namespace skelshrink::haar
