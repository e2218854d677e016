#pragma once

#include <cstdint>

#include "splatstego/scene.hpp"

namespace splatstego {

/// Synthetic cover/hidden pair generator. Primitives cluster into Gaussian
/// blobs (a few hundred primitives each) so that moderate random pruning
/// leaves the rendered image nearly unchanged. A content subset gets high
/// cover opacity and a hidden opacity complementary to the cover one; the
/// rest form a low hidden-opacity floor below any useful threshold.
struct SynthConfig {
    std::size_t count = 20000;
    std::uint64_t seed = 1;
    double content_fraction = 0.5;
    double floor_min = 0.02;  // hidden opacity range outside the content set
    double floor_max = 0.18;
    double sh_base_sigma = 0.35;    // per-blob color variation
    double sh_jitter_sigma = 0.08;  // per-primitive variation
    double sh_decay = 0.5;          // amplitude falloff per SH order

    void validate() const;
};

struct ScenePair {
    GaussianScene cover;
    HiddenAttributes hidden;
};

/// Deterministic in cfg. Hidden opacity of content primitives is
/// 0.3 + 0.6 * (1 - cover_alpha) plus small jitter, always above 0.25;
/// floor primitives stay below it.
ScenePair gen_scene_pair(const SynthConfig& cfg);

}  // namespace splatstego
