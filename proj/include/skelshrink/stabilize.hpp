#pragma once

#include <cstdint>
#include <vector>

namespace skelshrink {

enum class Stabilizer { anscombe, haar_fisz };

// Approximately unit-variance Gaussianized data plus what the inverse needs
// (the scale counts, for the haar_fisz flavor).
struct StabilizedField {
  std::vector<double> values;
  Stabilizer provenance = Stabilizer::anscombe;
  std::vector<std::int64_t> scale;  // haar_fisz only
};

// z = 2 sqrt(g + 3/8) and its inverse (z/2)^2 - 3/8.
double anscombe(double g);
std::vector<double> anscombe(const std::vector<std::int64_t>& g);
double anscombe_inv(double z);
std::vector<double> anscombe_inv(const std::vector<double>& z);

// y / sqrt(t) (0 when t == 0) and its inverse z sqrt(t).
double haar_fisz_fwd(std::int64_t y, std::int64_t t);
StabilizedField haar_fisz_fwd(const std::vector<std::int64_t>& y,
                              const std::vector<std::int64_t>& t);
double haar_fisz_inv(double z, std::int64_t t);
std::vector<double> haar_fisz_inv(const StabilizedField& field);

// sigma sqrt(2 ln n); n >= 2.
double universal_threshold(std::int64_t n, double sigma);

// Risk-minimizing soft threshold over candidates {0} + {|y_i|}, capped at
// the universal threshold; ties toward the smallest candidate.
double sureshrink_threshold(const std::vector<double>& coeffs, double sigma);

}  // namespace skelshrink
