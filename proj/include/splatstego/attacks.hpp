#pragma once

#include <cstdint>

#include "splatstego/scene.hpp"

namespace splatstego {

/// Drops the floor(ratio * N) primitives with the lowest activated opacity
/// (ties broken by index); survivors keep their original order. ratio in
/// [0, 1); 0 is the identity.
GaussianScene prune_sequential(const GaussianScene& scene, double ratio);

/// Drops floor(ratio * N) primitives chosen uniformly without replacement.
GaussianScene prune_random(const GaussianScene& scene, double ratio, std::uint64_t seed);

/// Adds i.i.d. N(0, sigma^2) to every SH coefficient of every primitive.
GaussianScene add_sh_noise(const GaussianScene& scene, double sigma, std::uint64_t seed);

}  // namespace splatstego
