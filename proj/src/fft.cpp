#include "cvssi/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "cvssi/error.hpp"

namespace cvssi {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) { // bit-reversal permutation
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const Complex wstep(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wstep;
            }
        }
    }
}

// Direct O(n^2) transform for lengths without a radix-2 decomposition.
// Sizes here are tiny (the saliency working scale), so this is fine.
void dft_direct(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    std::vector<Complex> twiddle(n);
    const double sign = inverse ? 2.0 : -2.0;
    for (std::size_t m = 0; m < n; ++m)
        twiddle[m] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            acc += a[j] * twiddle[(j * k) % n];
        out[k] = acc;
    }
    a = std::move(out);
}

} // namespace

void dft_1d(std::vector<Complex>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0)
        throw ShapeError("empty transform");
    if (n > 1) {
        if (is_pow2(n))
            fft_radix2(data, inverse);
        else
            dft_direct(data, inverse);
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (Complex& c : data) c *= scale;
    }
}

std::vector<Complex> dft_2d(const Plane& img) {
    if (img.empty())
        throw ShapeError("empty image");
    const int w = img.width();
    const int h = img.height();
    std::vector<Complex> spec(static_cast<std::size_t>(w) * h);

    std::vector<Complex> row(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x)
            row[static_cast<std::size_t>(x)] = Complex(img.at(x, y), 0.0);
        dft_1d(row, false);
        for (int x = 0; x < w; ++x)
            spec[static_cast<std::size_t>(y) * w + x] = row[static_cast<std::size_t>(x)];
    }
    std::vector<Complex> col(static_cast<std::size_t>(h));
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y)
            col[static_cast<std::size_t>(y)] = spec[static_cast<std::size_t>(y) * w + x];
        dft_1d(col, false);
        for (int y = 0; y < h; ++y)
            spec[static_cast<std::size_t>(y) * w + x] = col[static_cast<std::size_t>(y)];
    }
    return spec;
}

std::vector<Complex> idft_2d(const std::vector<Complex>& freq, int width, int height) {
    if (width < 1 || height < 1 ||
        freq.size() != static_cast<std::size_t>(width) * height)
        throw ShapeError("spectrum size does not match dimensions");
    std::vector<Complex> out = freq;

    std::vector<Complex> row(static_cast<std::size_t>(width));
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x)
            row[static_cast<std::size_t>(x)] = out[static_cast<std::size_t>(y) * width + x];
        dft_1d(row, true);
        for (int x = 0; x < width; ++x)
            out[static_cast<std::size_t>(y) * width + x] = row[static_cast<std::size_t>(x)];
    }
    std::vector<Complex> col(static_cast<std::size_t>(height));
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y)
            col[static_cast<std::size_t>(y)] = out[static_cast<std::size_t>(y) * width + x];
        dft_1d(col, true);
        for (int y = 0; y < height; ++y)
            out[static_cast<std::size_t>(y) * width + x] = col[static_cast<std::size_t>(y)];
    }
    return out;
}

} // namespace cvssi
