#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "splatstego/autoencoder.hpp"
#include "splatstego/scene.hpp"

namespace splatstego {

using IndexSet = std::vector<std::uint32_t>;

/// Indices whose activated opacity is strictly above tau, ascending.
/// Throws if nothing qualifies; an empty carrier set cannot be keyed.
IndexSet significant_indices(const std::vector<float>& activated_opacity, double tau);

std::vector<std::array<float, 3>> coordinates_for(const GaussianScene& scene,
                                                  const IndexSet& indices);

/// Resolves stored coordinates against a scene by bit-exact position match.
/// -1 marks a coordinate no longer present (for example after pruning).
/// Throws if a queried coordinate matches more than one primitive.
std::vector<std::int64_t> match_coordinates(const GaussianScene& scene,
                                            const std::vector<std::array<float, 3>>& coords);

/// Activated opacities at the matched primitives; absent slots take
/// fill_alpha (0 makes the mapper input 1 - alpha saturate at 1).
std::vector<double> gather_opacities(const GaussianScene& scene,
                                     const std::vector<std::int64_t>& matches,
                                     double fill_alpha = 0.0);

/// Predicted hidden opacities from cover opacities: D(E(1 - alpha)).
std::vector<double> map_opacity(const Autoencoder& model, const std::vector<double>& cover_alpha);

}  // namespace splatstego
