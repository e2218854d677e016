#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace splatstego {

/// Linear-space RGB image, values nominally in [0,1], row-major.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<double> rgb;  // 3 * width * height

    ImageBuffer() = default;
    ImageBuffer(int w, int h)
        : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0.0) {}

    double& at(int x, int y, int c) {
        return rgb[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    double at(int x, int y, int c) const {
        return rgb[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
};

/// Binary PPM (P6, maxval 255). Values are clamped to [0,1] and rounded.
void write_ppm(const ImageBuffer& img, const std::string& path);

/// Reads a P6 PPM with maxval 255; bytes map back to v/255.
ImageBuffer read_ppm(const std::string& path);

}  // namespace splatstego
