#include "splatstego/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "splatstego/metrics.hpp"
#include "splatstego/opacity_stego.hpp"
#include "splatstego/renderer.hpp"

namespace splatstego {

namespace {

double clamp_alpha(double a) {
    constexpr double kEps = 1e-6;
    return a < kEps ? kEps : (a > 1.0 - kEps ? 1.0 - kEps : a);
}

void copy_primitive(const GaussianScene& src, std::size_t i, GaussianScene& dst, std::size_t o) {
    for (int k = 0; k < 3; ++k) {
        dst.positions[o * 3 + k] = src.positions[i * 3 + k];
        dst.normals[o * 3 + k] = src.normals[i * 3 + k];
        dst.log_scales[o * 3 + k] = src.log_scales[i * 3 + k];
    }
    for (int k = 0; k < 4; ++k) dst.rotations[o * 4 + k] = src.rotations[i * 4 + k];
    dst.raw_opacities[o] = src.raw_opacities[i];
    dst.sh[o] = src.sh[i];
}

}  // namespace

EmbedResult embed_pipeline(const GaussianScene& cover, const HiddenAttributes& hidden,
                           const EmbedConfig& cfg) {
    cfg.stego.validate();
    if (!cover.consistent()) throw std::invalid_argument("inconsistent cover scene");
    if (hidden.sh.size() != cover.count || hidden.opacity.size() != cover.count)
        throw std::invalid_argument("hidden attributes do not match cover primitive count");
    if (!(cfg.tau >= 0.0 && cfg.tau < 1.0)) throw std::invalid_argument("tau must be in [0,1)");

    const IndexSet carriers = significant_indices(hidden.opacity, cfg.tau);

    EmbedResult res;
    res.carriers = carriers.size();
    res.stego_scene = cover;

    // A payload field "wraps" when storing the fused code as float32 shifts it
    // across the low-b field boundary (carry into the cover bits), which flips
    // the recovered coefficient by nearly the whole field span. Small in-field
    // drift is harmless and not counted.
    std::size_t wrapped = 0;
    const int gamma = cfg.stego.quant.gamma;
    for (std::uint32_t i : carriers) {
        ShBlock fused;
        for (int ch = 0; ch < ShBlock::kChannels; ++ch) {
            for (int j = 0; j < cfg.stego.n; ++j) {
                const int b = bit_budget(j, cfg.stego.k);
                const Code c = quantize(cover.sh[i].at(ch, j), cfg.stego.quant);
                const Code h = quantize(hidden.sh[i].at(ch, cfg.stego.n - 1 - j), cfg.stego.quant);
                const Code code = embed_coeff(c, h, b, gamma);
                const float stored = dequantize(code, cfg.stego.quant);
                fused.at(ch, j) = stored;

                const auto drift = static_cast<std::int64_t>(quantize(stored, cfg.stego.quant)) -
                                   static_cast<std::int64_t>(code);
                const auto field = static_cast<std::int64_t>(code & ((Code{1} << b) - 1));
                if (field + drift < 0 || field + drift >= (std::int64_t{1} << b)) ++wrapped;
            }
        }
        res.stego_scene.sh[i] = fused;
    }
    res.wrap_fraction = carriers.empty()
                            ? 0.0
                            : static_cast<double>(wrapped) /
                                  (static_cast<double>(carriers.size()) * ShBlock::kChannels *
                                   cfg.stego.n);

    std::vector<double> cover_alpha(carriers.size()), hidden_alpha(carriers.size());
    for (std::size_t s = 0; s < carriers.size(); ++s) {
        cover_alpha[s] = sigmoid(static_cast<double>(cover.raw_opacities[carriers[s]]));
        hidden_alpha[s] = static_cast<double>(hidden.opacity[carriers[s]]);
    }
    res.train_report = ae_train(res.key.model, cover_alpha, hidden_alpha, cfg.train);

    res.key.params = cfg.stego;
    res.key.tau = cfg.tau;
    res.key.coords = coordinates_for(cover, carriers);
    return res;
}

ExtractResult extract_pipeline(const GaussianScene& stego, const StegoKey& key,
                               const ExtractConfig& cfg) {
    key.params.validate();
    if (!stego.consistent()) throw std::invalid_argument("inconsistent stego scene");
    if (cfg.max_sh_order < 0 || cfg.max_sh_order > 3)
        throw std::invalid_argument("max_sh_order must be in [0,3]");

    const auto matches = match_coordinates(stego, key.coords);
    const auto cover_alpha = gather_opacities(stego, matches, cfg.fill_alpha);
    const auto predicted = map_opacity(key.model, cover_alpha);

    ExtractResult res;
    for (std::int64_t m : matches) {
        if (m >= 0)
            ++res.found;
        else
            ++res.missing;
    }

    std::set<int> keep;
    for (int o = 0; o <= cfg.max_sh_order; ++o) keep.insert(o);

    res.hidden_scene.resize(res.found);
    std::size_t o = 0;
    for (std::size_t s = 0; s < matches.size(); ++s) {
        const std::int64_t m = matches[s];
        if (m < 0) continue;
        copy_primitive(stego, static_cast<std::size_t>(m), res.hidden_scene, o);
        ShBlock sh = extract_block(stego.sh[m], key.params);
        if (cfg.max_sh_order < 3) sh = filter_orders(sh, keep);
        res.hidden_scene.sh[o] = sh;
        res.hidden_scene.raw_opacities[o] =
            static_cast<float>(logit(clamp_alpha(predicted[s])));
        ++o;
    }
    return res;
}

GaussianScene assemble_hidden_gt(const GaussianScene& cover, const HiddenAttributes& hidden,
                                 double tau) {
    if (hidden.sh.size() != cover.count || hidden.opacity.size() != cover.count)
        throw std::invalid_argument("hidden attributes do not match cover primitive count");
    const IndexSet idx = significant_indices(hidden.opacity, tau);
    GaussianScene gt;
    gt.resize(idx.size());
    for (std::size_t o = 0; o < idx.size(); ++o) {
        const std::size_t i = idx[o];
        copy_primitive(cover, i, gt, o);
        gt.sh[o] = hidden.sh[i];
        gt.raw_opacities[o] =
            static_cast<float>(logit(clamp_alpha(static_cast<double>(hidden.opacity[i]))));
    }
    return gt;
}

std::vector<SweepPoint> run_sweep(const SweepConfig& cfg) {
    const ScenePair pair = gen_scene_pair(cfg.scene);
    const Camera cam = default_camera(cfg.image_size, cfg.image_size);
    const ImageBuffer cover_img = render(pair.cover, cam);
    const GaussianScene gt = assemble_hidden_gt(pair.cover, pair.hidden, cfg.gt_tau);
    const ImageBuffer gt_img = render(gt, cam);

    std::vector<SweepPoint> points;
    points.reserve(cfg.ks.size() * cfg.taus.size());
    for (int k : cfg.ks) {
        for (double tau : cfg.taus) {
            EmbedConfig ec;
            ec.stego.k = k;
            ec.tau = tau;
            ec.train = cfg.train;
            const EmbedResult er = embed_pipeline(pair.cover, pair.hidden, ec);

            StegoKey key = er.key;  // weights as float32, as a reader would see them
            for (auto* p : key.model.params())
                for (double& v : *p) v = static_cast<float>(v);

            const ExtractResult xr = extract_pipeline(er.stego_scene, key);

            SweepPoint pt;
            pt.k = k;
            pt.tau = tau;
            pt.carriers = er.carriers;
            pt.psnr_stego = psnr(render(er.stego_scene, cam), cover_img);
            pt.psnr_hidden = psnr(render(xr.hidden_scene, cam), gt_img);
            points.push_back(pt);
        }
    }
    return points;
}

}  // namespace splatstego
