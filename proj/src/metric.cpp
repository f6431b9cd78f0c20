#include "cvssi/metric.hpp"

#include <cmath>
#include <string>

#include "cvssi/contrast.hpp"
#include "cvssi/error.hpp"
#include "cvssi/saliency.hpp"

namespace cvssi {

namespace {

constexpr int kMinMetricSide = 8;

double values_mean(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

double values_sd(const std::vector<double>& v) {
    const double m = values_mean(v);
    double ss = 0.0;
    for (double x : v) {
        const double d = x - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(v.size()));
}

double values_mad(const std::vector<double>& v) {
    const double m = values_mean(v);
    double s = 0.0;
    for (double x : v) s += std::fabs(x - m);
    return s / static_cast<double>(v.size());
}

void require_nonempty(const SimilarityMap& map) {
    if (map.plane.empty())
        throw ShapeError("empty similarity map");
}

struct FeatureMaps {
    SimilarityMap lcs;
    SimilarityMap gvss;
};

FeatureMaps compute_feature_maps(const GrayImage& ref, const GrayImage& dist,
                                 const MetricParams& params) {
    params.validate();
    if (!ref.same_size(dist))
        throw ShapeError("dimension mismatch: " + std::to_string(ref.width()) + "x" +
                         std::to_string(ref.height()) + " vs " + std::to_string(dist.width()) +
                         "x" + std::to_string(dist.height()));
    if (ref.width() < kMinMetricSide || ref.height() < kMinMetricSide)
        throw InvalidInputError("images must be at least 8x8 for scoring");
    if (!ref.all_finite() || !dist.all_finite())
        throw InvalidInputError("image contains non-finite samples");

    const GrayImage r = box_downsample_2x(ref);
    const GrayImage d = box_downsample_2x(dist);

    FeatureMaps maps;
    maps.lcs = lcs_map(contrast_map(r, params.window), contrast_map(d, params.window), params.c1);
    maps.gvss = gvss_map(spectral_residual_saliency(r, params.sr_working_width),
                         spectral_residual_saliency(d, params.sr_working_width), params.c2);
    return maps;
}

} // namespace

void MetricParams::validate() const {
    if (!(c1 > 0.0))
        throw ConfigError("c1 must be positive");
    if (!(c2 > 0.0))
        throw ConfigError("c2 must be positive");
    if (!(w1 >= 0.0 && w1 <= 1.0 && w2 >= 0.0 && w2 <= 1.0))
        throw ConfigError("weights must lie in [0, 1]");
    if (std::fabs(w1 + w2 - 1.0) > 1e-9)
        throw ConfigError("weights must satisfy w1 + w2 = 1");
    if (window < 3 || window % 2 == 0)
        throw ConfigError("window must be odd and >= 3");
    if (sr_working_width < 16)
        throw ConfigError("saliency working width must be >= 16");
}

std::string_view pooling_strategy_name(PoolingStrategy s) {
    switch (s) {
    case PoolingStrategy::product_mean: return "product_mean";
    case PoolingStrategy::product_std: return "product_std";
    case PoolingStrategy::product_mad: return "product_mad";
    case PoolingStrategy::sum_of_means: return "sum_of_means";
    case PoolingStrategy::sum_of_mads: return "sum_of_mads";
    case PoolingStrategy::sum_of_stds: return "sum_of_stds";
    }
    throw ConfigError("unknown pooling strategy");
}

double mean_pool(const SimilarityMap& map) {
    require_nonempty(map);
    return values_mean(map.plane.samples());
}

double sd_pool(const SimilarityMap& map) {
    require_nonempty(map);
    return values_sd(map.plane.samples());
}

double mad_pool(const SimilarityMap& map) {
    require_nonempty(map);
    return values_mad(map.plane.samples());
}

MetricScore cvssi_score(const GrayImage& ref, const GrayImage& dist, const MetricParams& params) {
    const FeatureMaps maps = compute_feature_maps(ref, dist, params);
    MetricScore s;
    s.sd_lcs = sd_pool(maps.lcs);
    s.sd_gvss = sd_pool(maps.gvss);
    s.score = params.w1 * s.sd_lcs + params.w2 * s.sd_gvss;
    return s;
}

std::array<double, 6> ablate_pooling_all(const GrayImage& ref, const GrayImage& dist,
                                         const MetricParams& params) {
    const FeatureMaps maps = compute_feature_maps(ref, dist, params);
    const Plane& lcs = maps.lcs.plane;
    const Plane gvss_on_lcs_grid = resize_bilinear(maps.gvss.plane, lcs.width(), lcs.height());

    std::vector<double> product(lcs.size());
    for (std::size_t i = 0; i < lcs.size(); ++i)
        product[i] = lcs.samples()[i] * gvss_on_lcs_grid.samples()[i];

    std::array<double, 6> out{};
    out[0] = values_mean(product);
    out[1] = values_sd(product);
    out[2] = values_mad(product);
    out[3] = params.w1 * mean_pool(maps.lcs) + params.w2 * mean_pool(maps.gvss);
    out[4] = params.w1 * mad_pool(maps.lcs) + params.w2 * mad_pool(maps.gvss);
    out[5] = params.w1 * sd_pool(maps.lcs) + params.w2 * sd_pool(maps.gvss);
    return out;
}

double ablate_pooling(const GrayImage& ref, const GrayImage& dist, const MetricParams& params,
                      PoolingStrategy strategy) {
    const std::array<double, 6> all = ablate_pooling_all(ref, dist, params);
    for (std::size_t i = 0; i < kPoolingStrategies.size(); ++i)
        if (kPoolingStrategies[i] == strategy)
            return all[i];
    throw ConfigError("unknown pooling strategy");
}

} // namespace cvssi
