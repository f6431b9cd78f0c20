#include "cvssi/saliency.hpp"

#include <cmath>

#include "cvssi/error.hpp"
#include "cvssi/fft.hpp"

namespace cvssi {

namespace {
constexpr double kLogEpsilon = 1e-12;
constexpr double kSmoothSigma = 2.5;
constexpr int kSmoothRadius = 4; // 9x9 support
constexpr int kMinWorkingWidth = 16;
} // namespace

SaliencyMap spectral_residual_saliency(const GrayImage& img, int working_width) {
    if (img.empty())
        throw ShapeError("empty image");
    if (working_width < kMinWorkingWidth)
        throw ConfigError("saliency working width must be >= 16");

    const int out_w = working_width;
    const int out_h = static_cast<int>(
        std::lround(static_cast<double>(img.height()) * working_width / img.width()));
    if (out_h < 1)
        throw ConfigError("degenerate saliency resize (zero height)");
    const Plane small = resize_bilinear(img, out_w, out_h);

    const std::vector<Complex> spec = dft_2d(small);
    const std::size_t n = spec.size();

    Plane log_amp(out_w, out_h);
    for (std::size_t i = 0; i < n; ++i)
        log_amp.samples()[i] = std::log(std::abs(spec[i]) + kLogEpsilon);
    const Plane smoothed = box_filter_3x3(log_amp);

    std::vector<Complex> residual_spec(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double residual = log_amp.samples()[i] - smoothed.samples()[i];
        const double phase = std::atan2(spec[i].imag(), spec[i].real());
        residual_spec[i] = std::polar(std::exp(residual), phase);
    }

    const std::vector<Complex> back = idft_2d(residual_spec, out_w, out_h);
    Plane sal(out_w, out_h);
    for (std::size_t i = 0; i < n; ++i)
        sal.samples()[i] = std::norm(back[i]); // squared magnitude

    sal = gaussian_blur(sal, kSmoothSigma, kSmoothRadius);

    const double peak = sal.max_value();
    if (peak > 0.0)
        for (double& v : sal.samples()) v /= peak;
    return sal;
}

SimilarityMap gvss_map(const SaliencyMap& ref, const SaliencyMap& dist, double c2) {
    return similarity_map(ref, dist, c2, Feature::saliency);
}

} // namespace cvssi
