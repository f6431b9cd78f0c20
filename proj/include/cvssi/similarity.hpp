#pragma once

#include "cvssi/image.hpp"

namespace cvssi {

enum class Feature { contrast, saliency };

// Per-position stabilized similarity in (0, 1], tagged with the feature
// that produced it.
struct SimilarityMap {
    Plane plane;
    Feature feature = Feature::contrast;
};

// Elementwise (2ab + c) / (a^2 + b^2 + c). For nonnegative inputs and
// c > 0 every value lies in (0, 1] and equals 1 exactly where a == b.
SimilarityMap similarity_map(const Plane& a, const Plane& b, double c, Feature feature);

} // namespace cvssi
