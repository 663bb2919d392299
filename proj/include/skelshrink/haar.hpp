#pragma once

#include <cstdint>
#include <vector>

namespace skelshrink::haar {

enum class Mode { decimated, undecimated };

// Nonnegative integer counts, 1D (ndim == 1, length cols) or 2D row-major
// (ndim == 2, rows x cols). Lengths need not be powers of two; decimated
// levels pad odd extents by one periodic wrap-around sample.
struct CountSignal {
  std::vector<std::int64_t> data;
  int rows = 1;
  int cols = 0;
  int ndim = 1;

  static CountSignal vector(std::vector<std::int64_t> v);
  static CountSignal image(std::vector<std::int64_t> v, int rows, int cols);
  std::size_t size() const { return data.size(); }
  void validate() const;  // nonnegativity + shape consistency
};

// Real-valued signal with the same shape conventions (pipeline output,
// stabilized fields).
struct RealSignal {
  std::vector<double> data;
  int rows = 1;
  int cols = 0;
  int ndim = 1;
};

// One subband: detail coefficients and the scaling coefficients produced at
// the same level (the per-coefficient plug-in variance). For 2D levels the
// three orientation bands share the same scale values (the block sums).
template <typename T>
struct Band {
  std::vector<T> detail;  // y
  std::vector<T> scale;   // t
  int rows = 1;
  int cols = 0;
};

// Multi-level pyramid. detail[k] holds the subbands of level k+1 (one for
// 1D, three for 2D: LH, HL, HH). coarse is the final scaling band.
template <typename T>
struct BasicPyramid {
  Mode mode = Mode::decimated;
  int ndim = 1;
  int levels = 0;
  int in_rows = 1, in_cols = 0;
  std::vector<std::vector<Band<T>>> detail;
  std::vector<T> coarse;
  int coarse_rows = 1, coarse_cols = 0;
  // Shape of the level input before periodic padding (decimated bookkeeping).
  std::vector<std::pair<int, int>> pre_pad_shape;
};

using Pyramid = BasicPyramid<std::int64_t>;
using RealPyramid = BasicPyramid<double>;

// Single 1D decimated level: detail[i] = prev[2i] - prev[2i+1],
// scale[i] = prev[2i] + prev[2i+1]; odd lengths are padded by wrap-around.
void forward_level_decimated(const std::vector<std::int64_t>& prev,
                             std::vector<std::int64_t>& detail,
                             std::vector<std::int64_t>& scale);

// Exact inverse of the above (detail/scale must satisfy the parity and
// dominance invariants; MalformedPyramidError otherwise).
std::vector<std::int64_t> inverse_level_decimated(
    const std::vector<std::int64_t>& detail,
    const std::vector<std::int64_t>& scale);

// Single 1D undecimated (a-trous) level with the given lag:
// detail[i] = prev[i] - prev[(i+lag) mod N], scale[i] the matching sum.
void forward_level_undecimated(const std::vector<std::int64_t>& prev,
                               std::int64_t lag,
                               std::vector<std::int64_t>& detail,
                               std::vector<std::int64_t>& scale);

// Full decomposition; levels >= 1. LevelOverflowError when the depth does
// not fit the signal extent.
Pyramid decompose(const CountSignal& g, int levels, Mode mode);
RealPyramid decompose(const RealSignal& g, int levels, Mode mode);

// Exact reconstruction. The integer overload round-trips counts exactly;
// the real overload averages the redundant inverses in undecimated mode.
CountSignal reconstruct(const Pyramid& pyr);
RealSignal reconstruct(const RealPyramid& pyr);

// Copy an integer pyramid into a real one (for coefficient modification).
RealPyramid to_real(const Pyramid& pyr);

}  // namespace skelshrink::haar
