#pragma once

#include "splatstego/image.hpp"

namespace splatstego {

/// 10*log10(1/MSE) over RGB with both images clamped to [0,1]; capped at 99.
/// Throws on dimension mismatch.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

/// Mean SSIM of the luma plane (0.299, 0.587, 0.114 weights): 11x11 Gaussian
/// window, sigma 1.5, C1 = 0.01^2, C2 = 0.03^2, valid positions only.
/// Throws on dimension mismatch or images smaller than the window.
double ssim(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace splatstego
