#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace splatstego {

/// Per-primitive spherical-harmonic coefficients: 16 slots per color channel,
/// degree 3. Slot j=0 is the DC term; order(j) = floor(sqrt(j)).
struct ShBlock {
    static constexpr int kSlots = 16;
    static constexpr int kChannels = 3;

    // channel-major: c[ch*16 + j]
    std::array<float, kChannels * kSlots> c{};

    float& at(int ch, int j) { return c[static_cast<std::size_t>(ch) * kSlots + j]; }
    float at(int ch, int j) const { return c[static_cast<std::size_t>(ch) * kSlots + j]; }

    static int order(int j) { return static_cast<int>(std::sqrt(static_cast<double>(j))); }

    bool operator==(const ShBlock&) const = default;
};

/// Structure-of-arrays 3DGS scene. Values are stored exactly as the asset
/// stores them: opacities as pre-sigmoid logits, scales as logs, rotations
/// unnormalized (w,x,y,z). Normals are carried through byte-exactly but
/// never interpreted.
struct GaussianScene {
    std::size_t count = 0;
    std::vector<float> positions;      // 3N
    std::vector<float> normals;        // 3N
    std::vector<float> rotations;      // 4N, (w,x,y,z)
    std::vector<float> log_scales;     // 3N
    std::vector<float> raw_opacities;  // N
    std::vector<ShBlock> sh;           // N

    void resize(std::size_t n);
    bool consistent() const;
};

/// The secret payload: per-primitive hidden SH block and activated hidden
/// opacity in [0,1]. Positions are shared with the cover by construction.
struct HiddenAttributes {
    std::vector<ShBlock> sh;
    std::vector<float> opacity;
};

struct Activated {
    std::vector<float> opacities;  // N, sigmoid(raw) in (0,1)
    std::vector<float> scales;     // 3N, exp(log_scale)
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
inline double logit(double p) { return std::log(p / (1.0 - p)); }

Activated activate(const GaussianScene& scene);

/// Parses the binary little-endian 3DGS point-cloud asset. Throws
/// std::runtime_error with a byte offset on malformed headers, property-list
/// mismatches, or truncated bodies.
GaussianScene load_scene(const std::vector<std::uint8_t>& bytes);

/// Serializes the canonical header plus packed float32 body. Output is a pure
/// function of the scene.
std::vector<std::uint8_t> save_scene(const GaussianScene& scene);

GaussianScene load_scene_file(const std::string& path);
void save_scene_file(const GaussianScene& scene, const std::string& path);

}  // namespace splatstego
