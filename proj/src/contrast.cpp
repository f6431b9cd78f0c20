#include "cvssi/contrast.hpp"

namespace cvssi {

ContrastMap contrast_map(const GrayImage& img, int window) {
    return local_std_map(img, window);
}

SimilarityMap lcs_map(const ContrastMap& ref, const ContrastMap& dist, double c1) {
    return similarity_map(ref, dist, c1, Feature::contrast);
}

} // namespace cvssi
