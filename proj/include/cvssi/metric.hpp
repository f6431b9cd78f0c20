#pragma once

#include <array>
#include <string_view>

#include "cvssi/image.hpp"
#include "cvssi/similarity.hpp"

namespace cvssi {

// Tunable constants of the index. w1 + w2 must equal 1.
struct MetricParams {
    double c1 = 55.0;
    double c2 = 0.00008;
    double w1 = 0.545;
    double w2 = 0.455;
    int window = 3;            // local contrast window side, odd
    int sr_working_width = 64; // saliency working width, pixels

    void validate() const; // throws ConfigError on violation
};

// Final score plus its pooled components. Lower means better quality;
// identical images score exactly 0, and 0 <= score <= 0.5 always.
struct MetricScore {
    double score = 0.0;
    double sd_lcs = 0.0;
    double sd_gvss = 0.0;
};

enum class PoolingStrategy {
    product_mean, // mean of the elementwise product map
    product_std,  // standard deviation of the product map
    product_mad,  // mean absolute deviation of the product map
    sum_of_means, // w1*mean(LCS) + w2*mean(GVSS)
    sum_of_mads,  // w1*mad(LCS)  + w2*mad(GVSS)
    sum_of_stds,  // w1*std(LCS)  + w2*std(GVSS) — the main metric
};

inline constexpr std::array<PoolingStrategy, 6> kPoolingStrategies = {
    PoolingStrategy::product_mean, PoolingStrategy::product_std,
    PoolingStrategy::product_mad,  PoolingStrategy::sum_of_means,
    PoolingStrategy::sum_of_mads,  PoolingStrategy::sum_of_stds,
};

std::string_view pooling_strategy_name(PoolingStrategy s);

// Map statistics used for pooling; N is the map pixel count, and the
// standard deviation is the population form (1/N).
double mean_pool(const SimilarityMap& map);
double sd_pool(const SimilarityMap& map);
double mad_pool(const SimilarityMap& map);

// Full pipeline: 2x box downsample both images, build the local contrast
// similarity map and the global saliency similarity map, combine their
// standard deviations with weights w1, w2. Inputs must share dimensions
// and be at least 8x8.
MetricScore cvssi_score(const GrayImage& ref, const GrayImage& dist,
                        const MetricParams& params = {});

// Alternative poolings over the same two similarity maps. product_*
// strategies act on the elementwise product (the saliency similarity map
// is bilinearly resized to the contrast grid first); sum_of_* strategies
// combine per-map statistics with w1, w2. sum_of_stds reproduces
// cvssi_score exactly.
double ablate_pooling(const GrayImage& ref, const GrayImage& dist,
                      const MetricParams& params, PoolingStrategy strategy);

// All six strategies from one evaluation of the feature maps, indexed in
// kPoolingStrategies order.
std::array<double, 6> ablate_pooling_all(const GrayImage& ref, const GrayImage& dist,
                                         const MetricParams& params);

} // namespace cvssi
