#include "splatstego/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace splatstego {

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

void check_dims(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("image dimension mismatch");
    if (a.width <= 0 || a.height <= 0) throw std::invalid_argument("empty image");
}

std::vector<double> luma(const ImageBuffer& img) {
    std::vector<double> y(static_cast<std::size_t>(img.width) * img.height);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = 0.299 * clamp01(img.rgb[i * 3]) + 0.587 * clamp01(img.rgb[i * 3 + 1]) +
               0.114 * clamp01(img.rgb[i * 3 + 2]);
    }
    return y;
}

}  // namespace

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    check_dims(a, b);
    double mse = 0.0;
    for (std::size_t i = 0; i < a.rgb.size(); ++i) {
        const double d = clamp01(a.rgb[i]) - clamp01(b.rgb[i]);
        mse += d * d;
    }
    mse /= static_cast<double>(a.rgb.size());
    if (mse <= 0.0) return 99.0;
    return std::min(10.0 * std::log10(1.0 / mse), 99.0);
}

double ssim(const ImageBuffer& a, const ImageBuffer& b) {
    check_dims(a, b);
    constexpr int kWin = 11;
    constexpr double kSigma = 1.5;
    constexpr double kC1 = 0.01 * 0.01;
    constexpr double kC2 = 0.03 * 0.03;
    if (a.width < kWin || a.height < kWin)
        throw std::invalid_argument("image smaller than the SSIM window");

    double g[kWin];
    double gsum = 0.0;
    for (int i = 0; i < kWin; ++i) {
        const double d = i - (kWin - 1) / 2.0;
        g[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
        gsum += g[i];
    }
    for (double& v : g) v /= gsum;
    double wgt[kWin][kWin];
    for (int i = 0; i < kWin; ++i)
        for (int j = 0; j < kWin; ++j) wgt[i][j] = g[i] * g[j];

    const std::vector<double> ya = luma(a);
    const std::vector<double> yb = luma(b);
    const int w = a.width, h = a.height;

    double total = 0.0;
    std::size_t windows = 0;
    for (int y0 = 0; y0 + kWin <= h; ++y0) {
        for (int x0 = 0; x0 + kWin <= w; ++x0) {
            double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
            for (int dy = 0; dy < kWin; ++dy) {
                const double* ra = ya.data() + static_cast<std::size_t>(y0 + dy) * w + x0;
                const double* rb = yb.data() + static_cast<std::size_t>(y0 + dy) * w + x0;
                for (int dx = 0; dx < kWin; ++dx) {
                    const double wv = wgt[dy][dx];
                    mx += wv * ra[dx];
                    my += wv * rb[dx];
                    sxx += wv * ra[dx] * ra[dx];
                    syy += wv * rb[dx] * rb[dx];
                    sxy += wv * ra[dx] * rb[dx];
                }
            }
            const double vx = sxx - mx * mx;
            const double vy = syy - my * my;
            const double cov = sxy - mx * my;
            total += ((2.0 * mx * my + kC1) * (2.0 * cov + kC2)) /
                     ((mx * mx + my * my + kC1) * (vx + vy + kC2));
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

}  // namespace splatstego
