#include "splatstego/attacks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "splatstego/rng.hpp"

namespace splatstego {

namespace {

std::size_t prune_count(std::size_t n, double ratio) {
    if (!(ratio >= 0.0 && ratio < 1.0)) throw std::invalid_argument("prune ratio must be in [0,1)");
    return static_cast<std::size_t>(ratio * static_cast<double>(n));
}

GaussianScene keep_subset(const GaussianScene& scene, const std::vector<std::uint32_t>& keep) {
    GaussianScene out;
    out.resize(keep.size());
    for (std::size_t o = 0; o < keep.size(); ++o) {
        const std::size_t i = keep[o];
        for (int k = 0; k < 3; ++k) {
            out.positions[o * 3 + k] = scene.positions[i * 3 + k];
            out.normals[o * 3 + k] = scene.normals[i * 3 + k];
            out.log_scales[o * 3 + k] = scene.log_scales[i * 3 + k];
        }
        for (int k = 0; k < 4; ++k) out.rotations[o * 4 + k] = scene.rotations[i * 4 + k];
        out.raw_opacities[o] = scene.raw_opacities[i];
        out.sh[o] = scene.sh[i];
    }
    return out;
}

}  // namespace

GaussianScene prune_sequential(const GaussianScene& scene, double ratio) {
    const std::size_t drop = prune_count(scene.count, ratio);
    std::vector<std::uint32_t> order(scene.count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (scene.raw_opacities[a] != scene.raw_opacities[b])
            return scene.raw_opacities[a] < scene.raw_opacities[b];
        return a < b;
    });
    std::vector<std::uint32_t> keep(order.begin() + drop, order.end());
    std::sort(keep.begin(), keep.end());
    return keep_subset(scene, keep);
}

GaussianScene prune_random(const GaussianScene& scene, double ratio, std::uint64_t seed) {
    const std::size_t drop = prune_count(scene.count, ratio);
    std::vector<std::uint32_t> pool(scene.count);
    std::iota(pool.begin(), pool.end(), 0);
    Rng rng(seed);
    for (std::size_t i = 0; i < drop; ++i) {
        const std::size_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<std::uint32_t> keep(pool.begin() + drop, pool.end());
    std::sort(keep.begin(), keep.end());
    return keep_subset(scene, keep);
}

GaussianScene add_sh_noise(const GaussianScene& scene, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("noise sigma must be non-negative");
    GaussianScene out = scene;
    Rng rng(seed);
    for (std::size_t i = 0; i < out.count; ++i) {
        for (float& c : out.sh[i].c) c = static_cast<float>(c + rng.normal(0.0, sigma));
    }
    return out;
}

}  // namespace splatstego
