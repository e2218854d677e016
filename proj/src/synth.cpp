#include "splatstego/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "splatstego/rng.hpp"

namespace splatstego {

void SynthConfig::validate() const {
    if (count < 1) throw std::invalid_argument("count must be at least 1");
    if (!(content_fraction >= 0.0 && content_fraction <= 1.0))
        throw std::invalid_argument("content_fraction must be in [0,1]");
    if (!(floor_min > 0.0 && floor_min <= floor_max && floor_max < 0.25))
        throw std::invalid_argument("floor range must satisfy 0 < min <= max < 0.25");
    if (!(sh_base_sigma > 0.0) || !(sh_jitter_sigma > 0.0))
        throw std::invalid_argument("SH sigmas must be positive");
    if (!(sh_decay > 0.0 && sh_decay <= 1.0))
        throw std::invalid_argument("sh_decay must be in (0,1]");
}

ScenePair gen_scene_pair(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    const std::size_t nblobs = std::max<std::size_t>(1, cfg.count / 400);
    std::vector<std::array<double, 3>> centers(nblobs);
    std::vector<ShBlock> cover_base(nblobs), hidden_base(nblobs);
    for (std::size_t b = 0; b < nblobs; ++b) {
        for (double& c : centers[b]) c = rng.uniform(-0.35, 0.35);
        for (int ch = 0; ch < 3; ++ch) {
            for (int j = 0; j < ShBlock::kSlots; ++j) {
                const double amp = cfg.sh_base_sigma * std::pow(cfg.sh_decay, ShBlock::order(j));
                cover_base[b].at(ch, j) = static_cast<float>(rng.normal(0.0, amp));
                hidden_base[b].at(ch, j) = static_cast<float>(rng.normal(0.0, amp));
            }
        }
    }

    ScenePair pair;
    pair.cover.resize(cfg.count);
    pair.hidden.sh.resize(cfg.count);
    pair.hidden.opacity.resize(cfg.count);

    for (std::size_t i = 0; i < cfg.count; ++i) {
        const std::size_t b = rng.below(nblobs);
        for (int k = 0; k < 3; ++k) {
            pair.cover.positions[i * 3 + k] =
                static_cast<float>(centers[b][k] + rng.normal(0.0, 0.04));
            pair.cover.normals[i * 3 + k] = 0.0f;
        }

        double q[4];
        double qn = 0.0;
        for (double& v : q) {
            v = rng.normal();
            qn += v * v;
        }
        qn = std::sqrt(qn);
        if (qn == 0.0) {
            q[0] = 1.0;
            q[1] = q[2] = q[3] = 0.0;
            qn = 1.0;
        }
        for (int k = 0; k < 4; ++k)
            pair.cover.rotations[i * 4 + k] = static_cast<float>(q[k] / qn);

        for (int k = 0; k < 3; ++k)
            pair.cover.log_scales[i * 3 + k] = static_cast<float>(rng.uniform(-6.0, -2.0));

        const bool content = rng.uniform() < cfg.content_fraction;
        const double alpha = content ? rng.uniform(0.6, 0.95) : rng.uniform(0.05, 0.55);
        pair.cover.raw_opacities[i] = static_cast<float>(logit(alpha));

        for (int ch = 0; ch < 3; ++ch) {
            for (int j = 0; j < ShBlock::kSlots; ++j) {
                const double amp = cfg.sh_jitter_sigma * std::pow(cfg.sh_decay, ShBlock::order(j));
                pair.cover.sh[i].at(ch, j) =
                    static_cast<float>(cover_base[b].at(ch, j) + rng.normal(0.0, amp));
                pair.hidden.sh[i].at(ch, j) =
                    static_cast<float>(hidden_base[b].at(ch, j) + rng.normal(0.0, amp));
            }
        }

        const double hid = content ? 0.3 + 0.6 * (1.0 - alpha) + rng.uniform(-0.01, 0.01)
                                   : rng.uniform(cfg.floor_min, cfg.floor_max);
        pair.hidden.opacity[i] = static_cast<float>(hid);
    }
    return pair;
}

}  // namespace splatstego
