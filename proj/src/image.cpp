#include "cvssi/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvssi/error.hpp"

namespace cvssi {

Plane::Plane(int width, int height, double fill) {
    if (width < 0 || height < 0)
        throw ShapeError("plane dimensions must be nonnegative");
    width_ = width;
    height_ = height;
    samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

Plane::Plane(int width, int height, std::vector<double> samples) {
    if (width < 0 || height < 0)
        throw ShapeError("plane dimensions must be nonnegative");
    if (samples.size() != static_cast<std::size_t>(width) * height)
        throw ShapeError("sample count does not match plane dimensions");
    width_ = width;
    height_ = height;
    samples_ = std::move(samples);
    if (!all_finite())
        throw InvalidInputError("plane contains non-finite samples");
}

double Plane::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return at(x, y);
}

double Plane::min_value() const {
    return *std::min_element(samples_.begin(), samples_.end());
}

double Plane::max_value() const {
    return *std::max_element(samples_.begin(), samples_.end());
}

double Plane::mean() const {
    double sum = 0.0;
    for (double v : samples_) sum += v;
    return samples_.empty() ? 0.0 : sum / static_cast<double>(samples_.size());
}

bool Plane::all_finite() const {
    for (double v : samples_)
        if (!std::isfinite(v)) return false;
    return true;
}

GrayImage to_grayscale(const RgbImage& img) {
    if (img.width < 0 || img.height < 0 ||
        img.samples.size() != 3u * static_cast<std::size_t>(img.width) * img.height)
        throw ShapeError("rgb sample count does not match dimensions");
    for (double v : img.samples)
        if (!std::isfinite(v))
            throw InvalidInputError("rgb image contains non-finite samples");

    GrayImage out(img.width, img.height);
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = img.samples[3 * i];
        const double g = img.samples[3 * i + 1];
        const double b = img.samples[3 * i + 2];
        // b + 0.299*(r-b) + 0.587*(g-b) == 0.299r + 0.587g + 0.114b,
        // and is exact when r == g == b.
        out.samples()[i] = b + 0.299 * (r - b) + 0.587 * (g - b);
    }
    return out;
}

GrayImage box_downsample_2x(const GrayImage& img) {
    if (img.width() < 2 || img.height() < 2)
        throw InvalidInputError("image too small to downsample (needs 2x2)");
    const int ow = img.width() / 2;
    const int oh = img.height() / 2;
    GrayImage out(ow, oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            const double a = img.at(2 * x, 2 * y);
            const double b = img.at(2 * x + 1, 2 * y);
            const double c = img.at(2 * x, 2 * y + 1);
            const double d = img.at(2 * x + 1, 2 * y + 1);
            // pairwise grouping keeps constant blocks exact
            out.at(x, y) = ((a + b) + (c + d)) * 0.25;
        }
    }
    return out;
}

Plane local_std_map(const Plane& img, int window) {
    if (img.empty())
        throw ShapeError("empty image");
    if (window < 3 || window % 2 == 0)
        throw ConfigError("window must be odd and >= 3, got " + std::to_string(window));
    if (window > img.width() || window > img.height())
        throw ConfigError("window " + std::to_string(window) + " exceeds image dimensions");

    const int r = window / 2;
    const int n = window * window;
    Plane out(img.width(), img.height());
    std::vector<double> buf(static_cast<std::size_t>(n));
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            // Work relative to the center value so constant windows come
            // out exactly zero.
            const double center = img.at(x, y);
            int k = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    buf[k++] = img.at_clamped(x + dx, y + dy) - center;
            double sum = 0.0;
            for (double v : buf) sum += v;
            const double mean = sum / n;
            double ss = 0.0;
            for (double v : buf) {
                const double d = v - mean;
                ss += d * d;
            }
            out.at(x, y) = std::sqrt(ss / (n - 1));
        }
    }
    return out;
}

Plane box_filter_3x3(const Plane& img) {
    if (img.empty())
        throw ShapeError("empty image");
    Plane out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double sum = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    sum += img.at_clamped(x + dx, y + dy);
            out.at(x, y) = sum / 9.0;
        }
    }
    return out;
}

Plane gaussian_blur(const Plane& img, double sigma, int radius) {
    if (img.empty())
        throw ShapeError("empty image");
    if (!(sigma > 0.0) || radius < 0)
        throw ConfigError("gaussian blur needs sigma > 0 and radius >= 0");

    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double ksum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(i + radius)] = v;
        ksum += v;
    }
    for (double& v : kernel) v /= ksum;

    Plane tmp(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[static_cast<std::size_t>(i + radius)] * img.at_clamped(x + i, y);
            tmp.at(x, y) = acc;
        }

    Plane out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[static_cast<std::size_t>(i + radius)] * tmp.at_clamped(x, y + i);
            out.at(x, y) = acc;
        }
    return out;
}

Plane resize_bilinear(const Plane& img, int out_width, int out_height) {
    if (img.empty())
        throw ShapeError("empty image");
    if (out_width < 1 || out_height < 1)
        throw ConfigError("degenerate resize to " + std::to_string(out_width) + "x" +
                          std::to_string(out_height));

    Plane out(out_width, out_height);
    const double sx = static_cast<double>(img.width()) / out_width;
    const double sy = static_cast<double>(img.height()) / out_height;
    for (int oy = 0; oy < out_height; ++oy) {
        double fy = std::clamp((oy + 0.5) * sy - 0.5, 0.0, static_cast<double>(img.height() - 1));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, img.height() - 1);
        fy -= y0;
        for (int ox = 0; ox < out_width; ++ox) {
            double fx = std::clamp((ox + 0.5) * sx - 0.5, 0.0, static_cast<double>(img.width() - 1));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, img.width() - 1);
            fx -= x0;
            const double v00 = img.at(x0, y0), v01 = img.at(x1, y0);
            const double v10 = img.at(x0, y1), v11 = img.at(x1, y1);
            // lerp form: exact for constant inputs
            const double top = v00 + fx * (v01 - v00);
            const double bot = v10 + fx * (v11 - v10);
            out.at(ox, oy) = top + fy * (bot - top);
        }
    }
    return out;
}

} // namespace cvssi
