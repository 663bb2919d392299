#pragma once

#include <string>

#include "skelshrink/haar.hpp"

namespace skelshrink {

// 8-bit PGM (P2 ascii or P5 binary). Values above 255 or malformed headers
// raise FormatError.
haar::CountSignal pgm_read(const std::string& path);

// Writes binary P5; intensities are rounded and clipped to [0, 255].
void pgm_write(const std::string& path, const haar::RealSignal& img);
void pgm_write(const std::string& path, const haar::CountSignal& img);

}  // namespace skelshrink
