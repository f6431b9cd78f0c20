#pragma once

#include "cvssi/image.hpp"
#include "cvssi/similarity.hpp"

namespace cvssi {

// Local RMS contrast: windowed sample standard deviation of luminance.
using ContrastMap = Plane;

ContrastMap contrast_map(const GrayImage& img, int window);

// Local contrast similarity of two contrast maps.
SimilarityMap lcs_map(const ContrastMap& ref, const ContrastMap& dist, double c1);

} // namespace cvssi
