#pragma once

#include <cstdint>
#include <vector>

#include "splatstego/autoencoder.hpp"
#include "splatstego/key.hpp"
#include "splatstego/scene.hpp"
#include "splatstego/sh_stego.hpp"
#include "splatstego/synth.hpp"

namespace splatstego {

struct EmbedConfig {
    StegoParams stego{};
    double tau = 0.25;
    TrainConfig train{};
};

struct EmbedResult {
    GaussianScene stego_scene;
    StegoKey key;
    TrainReport train_report;
    std::size_t carriers = 0;
    // Fraction of embedded coefficient fields whose low bits wrapped when the
    // fused code was stored as float32 (hidden top bits near the field edge).
    double wrap_fraction = 0.0;
};

/// Selects carriers by hidden opacity > tau, embeds their hidden SH into the
/// cover SH bit-planes, trains the opacity mapper on the carrier subsequence,
/// and assembles the private key.
EmbedResult embed_pipeline(const GaussianScene& cover, const HiddenAttributes& hidden,
                           const EmbedConfig& cfg);

struct ExtractConfig {
    int max_sh_order = 3;     // drop extracted SH orders above this
    double fill_alpha = 0.0;  // mapper input for keyed primitives that vanished
};

struct ExtractResult {
    GaussianScene hidden_scene;
    std::size_t found = 0;
    std::size_t missing = 0;
};

/// Rebuilds the hidden model from a (possibly attacked) stego scene and the
/// key: matched carriers contribute geometry + extracted SH + mapped opacity;
/// carriers that no longer exist are dropped.
ExtractResult extract_pipeline(const GaussianScene& stego, const StegoKey& key,
                               const ExtractConfig& cfg = {});

/// Reference hidden model for evaluation: cover geometry, true hidden SH and
/// opacity, restricted to hidden opacity > tau.
GaussianScene assemble_hidden_gt(const GaussianScene& cover, const HiddenAttributes& hidden,
                                 double tau);

struct SweepPoint {
    int k = 0;
    double tau = 0.0;
    std::size_t carriers = 0;
    double psnr_stego = 0.0;   // stego render vs cover render
    double psnr_hidden = 0.0;  // extracted render vs reference hidden render
};

struct SweepConfig {
    SynthConfig scene{};
    std::vector<int> ks{10, 13, 17, 20, 22};
    std::vector<double> taus{0.0, 0.1, 0.25, 0.3};
    TrainConfig train{};
    int image_size = 128;
    double gt_tau = 0.25;  // threshold defining the reference hidden model
};

std::vector<SweepPoint> run_sweep(const SweepConfig& cfg);

}  // namespace splatstego
