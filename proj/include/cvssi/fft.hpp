#pragma once

#include <complex>
#include <vector>

#include "cvssi/image.hpp"

namespace cvssi {

using Complex = std::complex<double>;

// In-place 1-D DFT. Radix-2 when the length is a power of two, direct
// evaluation otherwise. Forward is unnormalized; inverse carries the 1/n
// factor. Reentrant: no shared state, no plans.
void dft_1d(std::vector<Complex>& data, bool inverse);

// Unnormalized forward 2-D transform of a real plane, row-major.
std::vector<Complex> dft_2d(const Plane& img);

// Inverse 2-D transform including the 1/(width*height) factor.
std::vector<Complex> idft_2d(const std::vector<Complex>& freq, int width, int height);

} // namespace cvssi
