#pragma once

#include <cstddef>
#include <vector>

namespace cvssi {

// Row-major 2-D grid of doubles. Used for luminance images and for every
// intermediate feature map in the pipeline.
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, double fill = 0.0);
    // Takes ownership of samples; size must equal width*height and every
    // value must be finite.
    Plane(int width, int height, std::vector<double> samples);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    double& at(int x, int y) {
        return samples_[static_cast<std::size_t>(y) * width_ + x];
    }
    double at(int x, int y) const {
        return samples_[static_cast<std::size_t>(y) * width_ + x];
    }
    // Replicate-edge read: out-of-range coordinates are clamped.
    double at_clamped(int x, int y) const;

    std::vector<double>& samples() { return samples_; }
    const std::vector<double>& samples() const { return samples_; }

    bool same_size(const Plane& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    double min_value() const;
    double max_value() const;
    double mean() const;
    bool all_finite() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> samples_;
};

// Luminance image, nominal sample range [0, 255].
using GrayImage = Plane;

// Interleaved RGB image, nominal range [0, 255] per channel.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<double> samples; // r,g,b per pixel, row-major
};

// BT.601 luma (0.299, 0.587, 0.114). Arranged so that a gray triple
// (v,v,v) maps back to exactly v.
GrayImage to_grayscale(const RgbImage& img);

// Mean over non-overlapping 2x2 blocks; a trailing odd row or column is
// dropped. Output size is (width/2, height/2).
GrayImage box_downsample_2x(const GrayImage& img);

// Windowed sample standard deviation (1/(N-1) normalization, N = window^2)
// over a centered square window with replicate-edge padding. window must be
// odd, >= 3 and no larger than either image dimension.
Plane local_std_map(const Plane& img, int window);

// 3x3 mean filter, replicate-edge.
Plane box_filter_3x3(const Plane& img);

// Separable Gaussian with explicit support radius, replicate-edge.
Plane gaussian_blur(const Plane& img, double sigma, int radius);

// Bilinear resample to out_width x out_height, pixel-center aligned.
// A constant plane resamples to exactly the same constant.
Plane resize_bilinear(const Plane& img, int out_width, int out_height);

} // namespace cvssi
