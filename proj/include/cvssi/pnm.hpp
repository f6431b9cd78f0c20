#pragma once

#include <string>

#include "cvssi/image.hpp"

namespace cvssi {

// 8-bit PGM (P2 or P5). Integer sample v becomes the real value v.
GrayImage load_pgm(const std::string& path);

// 8-bit PPM (P3 or P6).
RgbImage load_ppm(const std::string& path);

// Dispatch on the magic number; PPM input is converted to grayscale.
GrayImage load_image_gray(const std::string& path);

// Binary PGM (P5); samples are rounded and clamped to [0, 255].
void save_pgm(const GrayImage& img, const std::string& path);

// Debug dumps for feature maps: PGM with values linearly rescaled to
// 0..255 (a constant map dumps as zeros), or CSV rows at full precision.
void save_plane_pgm(const Plane& map, const std::string& path);
void save_plane_csv(const Plane& map, const std::string& path);

} // namespace cvssi
