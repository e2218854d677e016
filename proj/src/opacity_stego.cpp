#include "splatstego/opacity_stego.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace splatstego {

IndexSet significant_indices(const std::vector<float>& activated_opacity, double tau) {
    IndexSet out;
    for (std::size_t i = 0; i < activated_opacity.size(); ++i) {
        if (static_cast<double>(activated_opacity[i]) > tau)
            out.push_back(static_cast<std::uint32_t>(i));
    }
    if (out.empty())
        throw std::runtime_error("no opacity above threshold " + std::to_string(tau) +
                                 "; nothing to carry");
    return out;
}

std::vector<std::array<float, 3>> coordinates_for(const GaussianScene& scene,
                                                  const IndexSet& indices) {
    std::vector<std::array<float, 3>> coords;
    coords.reserve(indices.size());
    for (std::uint32_t i : indices) {
        if (i >= scene.count) throw std::out_of_range("primitive index out of range");
        const float* p = scene.positions.data() + static_cast<std::size_t>(i) * 3;
        coords.push_back({p[0], p[1], p[2]});
    }
    return coords;
}

namespace {

struct BitKey {
    std::uint32_t x, y, z;
    bool operator==(const BitKey&) const = default;
};

struct BitKeyHash {
    std::size_t operator()(const BitKey& k) const {
        std::uint64_t h = k.x;
        h = h * 0x100000001b3ULL ^ k.y;
        h = h * 0x100000001b3ULL ^ k.z;
        return static_cast<std::size_t>(h);
    }
};

BitKey key_of(const float* p) {
    return {std::bit_cast<std::uint32_t>(p[0]), std::bit_cast<std::uint32_t>(p[1]),
            std::bit_cast<std::uint32_t>(p[2])};
}

}  // namespace

std::vector<std::int64_t> match_coordinates(const GaussianScene& scene,
                                            const std::vector<std::array<float, 3>>& coords) {
    std::unordered_map<BitKey, std::int64_t, BitKeyHash> lookup;
    lookup.reserve(scene.count * 2);
    for (std::size_t i = 0; i < scene.count; ++i) {
        auto [it, fresh] = lookup.try_emplace(key_of(scene.positions.data() + i * 3),
                                              static_cast<std::int64_t>(i));
        if (!fresh) it->second = -2;  // duplicate position, ambiguous if queried
    }

    std::vector<std::int64_t> out;
    out.reserve(coords.size());
    for (const auto& c : coords) {
        auto it = lookup.find(key_of(c.data()));
        if (it == lookup.end()) {
            out.push_back(-1);
        } else if (it->second == -2) {
            throw std::runtime_error("keyed coordinate matches multiple primitives");
        } else {
            out.push_back(it->second);
        }
    }
    return out;
}

std::vector<double> gather_opacities(const GaussianScene& scene,
                                     const std::vector<std::int64_t>& matches,
                                     double fill_alpha) {
    std::vector<double> out;
    out.reserve(matches.size());
    for (std::int64_t m : matches) {
        if (m < 0) {
            out.push_back(fill_alpha);
        } else {
            out.push_back(sigmoid(static_cast<double>(scene.raw_opacities[m])));
        }
    }
    return out;
}

std::vector<double> map_opacity(const Autoencoder& model, const std::vector<double>& cover_alpha) {
    std::vector<double> x(cover_alpha.size());
    for (std::size_t i = 0; i < cover_alpha.size(); ++i) x[i] = 1.0 - cover_alpha[i];
    return ae_forward(model, x);
}

}  // namespace splatstego
