#pragma once

#include "cvssi/image.hpp"
#include "cvssi/similarity.hpp"

namespace cvssi {

// Saliency at the reduced working scale, normalized to [0, 1].
using SaliencyMap = Plane;

// Spectral-residual saliency. Pipeline: bilinear resize to working_width
// (aspect preserved) -> 2-D DFT -> log-amplitude minus its 3x3 mean ->
// rebuild the spectrum from the residual amplitude and the original phase
// -> inverse transform -> squared magnitude -> 9x9 Gaussian smoothing
// (sigma 2.5) -> divide by the map maximum (an all-zero map stays zero).
// Deterministic for fixed inputs; working_width must be >= 16.
SaliencyMap spectral_residual_saliency(const GrayImage& img, int working_width);

// Global visual-saliency similarity of two saliency maps.
SimilarityMap gvss_map(const SaliencyMap& ref, const SaliencyMap& dist, double c2);

} // namespace cvssi
