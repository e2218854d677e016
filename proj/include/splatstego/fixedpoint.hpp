#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace splatstego {

using Code = std::uint64_t;

/// Offset-binary fixed-point parameters: a value v in [-c_max, c_max) maps to
/// a gamma-bit unsigned code via code = round((v + c_max) / q), q = 2*c_max / 2^gamma.
struct QuantParams {
    int gamma = 32;
    double c_max = 8.0;

    double step() const { return 2.0 * c_max / std::ldexp(1.0, gamma); }
    Code code_range() const { return Code{1} << gamma; }
    Code max_code() const { return code_range() - 1; }

    void validate() const {
        if (gamma < 8 || gamma > 32) throw std::invalid_argument("gamma must be in [8,32]");
        if (!(c_max > 0.0) || !std::isfinite(c_max)) throw std::invalid_argument("c_max must be positive");
    }
};

/// Clamps v to [-c_max, c_max - q] then rounds to the nearest code,
/// ties-to-even.
inline Code quantize(double v, const QuantParams& p) {
    if (!std::isfinite(v)) throw std::invalid_argument("quantize: non-finite value");
    const double q = p.step();
    const double lo = -p.c_max;
    const double hi = p.c_max - q;
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    const double code = std::nearbyint((v - lo) / q);
    if (code < 0.0) return 0;
    if (code > static_cast<double>(p.max_code())) return p.max_code();
    return static_cast<Code>(code);
}

/// Nearest float32 to code*q - c_max. Total on [0, 2^gamma).
inline float dequantize(Code code, const QuantParams& p) {
    return static_cast<float>(static_cast<double>(code) * p.step() - p.c_max);
}

}  // namespace splatstego
