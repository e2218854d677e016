#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "splatstego/attacks.hpp"
#include "splatstego/image.hpp"
#include "splatstego/key.hpp"
#include "splatstego/metrics.hpp"
#include "splatstego/opacity_stego.hpp"
#include "splatstego/pipeline.hpp"
#include "splatstego/renderer.hpp"
#include "splatstego/scene.hpp"
#include "splatstego/synth.hpp"

namespace ss = splatstego;

namespace {

ss::GaussianScene hidden_as_scene(const ss::GaussianScene& cover,
                                  const ss::HiddenAttributes& hidden) {
    ss::GaussianScene out = cover;
    out.sh = hidden.sh;
    for (std::size_t i = 0; i < out.count; ++i) {
        double a = hidden.opacity[i];
        a = std::clamp(a, 1e-6, 1.0 - 1e-6);
        out.raw_opacities[i] = static_cast<float>(ss::logit(a));
    }
    return out;
}

ss::HiddenAttributes hidden_from_scene(const ss::GaussianScene& scene) {
    ss::HiddenAttributes h;
    h.sh = scene.sh;
    h.opacity.resize(scene.count);
    for (std::size_t i = 0; i < scene.count; ++i)
        h.opacity[i] = static_cast<float>(ss::sigmoid(scene.raw_opacities[i]));
    return h;
}

struct GenOpts {
    std::size_t count = 20000;
    std::uint64_t seed = 1;
    double content_fraction = 0.5;
    double floor_min = 0.02, floor_max = 0.18;
    std::string out_cover, out_hidden;
};

struct EmbedOpts {
    std::string cover, hidden, out, key;
    int k = 17;
    double tau = 0.25;
    int gamma = 32;
    double cmax = 8.0;
    int epochs = 2000;
    double lr = 1e-3;
    double target_mse = 1e-3;
    std::uint64_t train_seed = 0;
};

struct ExtractOpts {
    std::string stego, key, out;
    int max_order = 3;
};

struct RenderOpts {
    std::string scene, out, camera;
    int width = 256, height = 256;
    int max_order = 3;
    std::vector<double> background;
};

struct AttackOpts {
    std::string in, out, mode;
    double ratio = 0.25;
    double sigma = 0.001;
    std::uint64_t seed = 0;
};

struct VerifyOpts {
    std::string cover, hidden, stego, key;
    int size = 256;
    double gt_tau = 0.25;
};

struct SweepOpts {
    std::string out;
    std::size_t count = 2000;
    std::uint64_t seed = 1;
    double floor_min = 0.15, floor_max = 0.24;
    int epochs = 600;
    int size = 128;
    std::vector<int> ks{10, 13, 17, 20, 22};
    std::vector<double> taus{0.0, 0.1, 0.25, 0.3};
};

int run_gen(const GenOpts& o) {
    ss::SynthConfig cfg;
    cfg.count = o.count;
    cfg.seed = o.seed;
    cfg.content_fraction = o.content_fraction;
    cfg.floor_min = o.floor_min;
    cfg.floor_max = o.floor_max;
    const ss::ScenePair pair = ss::gen_scene_pair(cfg);
    ss::save_scene_file(pair.cover, o.out_cover);
    ss::save_scene_file(hidden_as_scene(pair.cover, pair.hidden), o.out_hidden);
    std::size_t carriers = 0;
    for (float a : pair.hidden.opacity)
        if (a > 0.25f) ++carriers;
    std::cout << "generated " << pair.cover.count << " primitives (" << carriers
              << " above opacity 0.25) -> " << o.out_cover << ", " << o.out_hidden << "\n";
    return 0;
}

int run_embed(const EmbedOpts& o) {
    const ss::GaussianScene cover = ss::load_scene_file(o.cover);
    const ss::GaussianScene hidden_scene = ss::load_scene_file(o.hidden);
    if (hidden_scene.count != cover.count)
        throw std::runtime_error("cover and hidden assets have different primitive counts");
    for (std::size_t i = 0; i < 3 * cover.count; ++i) {
        if (cover.positions[i] != hidden_scene.positions[i])
            throw std::runtime_error("cover and hidden assets must share positions");
    }

    ss::EmbedConfig cfg;
    cfg.stego.k = o.k;
    cfg.stego.quant.gamma = o.gamma;
    cfg.stego.quant.c_max = o.cmax;
    cfg.tau = o.tau;
    cfg.train.max_epochs = o.epochs;
    cfg.train.learning_rate = o.lr;
    cfg.train.target_mse = o.target_mse;
    cfg.train.seed = o.train_seed;

    const ss::EmbedResult res = ss::embed_pipeline(cover, hidden_from_scene(hidden_scene), cfg);
    ss::save_scene_file(res.stego_scene, o.out);
    ss::write_key(res.key, o.key);
    std::cout << "embedded " << res.carriers << " carriers; mapper mse " << res.train_report.mse
              << " after " << res.train_report.epochs << " epochs; wrapped fields "
              << res.wrap_fraction * 100.0 << "%\n";
    return 0;
}

int run_extract(const ExtractOpts& o) {
    const ss::GaussianScene stego = ss::load_scene_file(o.stego);
    const ss::StegoKey key = ss::read_key(o.key);
    ss::ExtractConfig cfg;
    cfg.max_sh_order = o.max_order;
    const ss::ExtractResult res = ss::extract_pipeline(stego, key, cfg);
    if (res.found == 0) throw std::runtime_error("no keyed carrier present in the asset");
    ss::save_scene_file(res.hidden_scene, o.out);
    std::cout << "extracted " << res.found << " carriers (" << res.missing << " missing) -> "
              << o.out << "\n";
    return 0;
}

int run_render(const RenderOpts& o) {
    const ss::GaussianScene scene = ss::load_scene_file(o.scene);
    ss::Camera cam;
    if (!o.camera.empty())
        cam = ss::load_camera_file(o.camera);
    else
        cam = ss::default_camera(o.width, o.height);
    ss::RenderOptions opt;
    opt.max_sh_order = o.max_order;
    if (!o.background.empty())
        opt.background = {o.background[0], o.background[1], o.background[2]};
    ss::RenderStats stats;
    const ss::ImageBuffer img = ss::render(scene, cam, opt, &stats);
    ss::write_ppm(img, o.out);
    std::cout << "rendered " << cam.width << "x" << cam.height << " (" << stats.drawn
              << " drawn, " << stats.culled << " culled, " << stats.degenerate
              << " degenerate) -> " << o.out << "\n";
    return 0;
}

int run_attack(const AttackOpts& o) {
    const ss::GaussianScene in = ss::load_scene_file(o.in);
    ss::GaussianScene out;
    if (o.mode == "prune-seq") {
        out = ss::prune_sequential(in, o.ratio);
    } else if (o.mode == "prune-rand") {
        out = ss::prune_random(in, o.ratio, o.seed);
    } else if (o.mode == "noise") {
        out = ss::add_sh_noise(in, o.sigma, o.seed);
    } else {
        throw std::runtime_error("unknown attack mode: " + o.mode);
    }
    ss::save_scene_file(out, o.out);
    std::cout << o.mode << ": " << in.count << " -> " << out.count << " primitives -> " << o.out
              << "\n";
    return 0;
}

int run_verify(const VerifyOpts& o) {
    const ss::GaussianScene cover = ss::load_scene_file(o.cover);
    const ss::GaussianScene hidden_scene = ss::load_scene_file(o.hidden);
    if (hidden_scene.count != cover.count)
        throw std::runtime_error("cover and hidden assets have different primitive counts");
    const ss::GaussianScene stego = ss::load_scene_file(o.stego);
    const ss::StegoKey key = ss::read_key(o.key);

    const ss::HiddenAttributes hidden = hidden_from_scene(hidden_scene);
    const ss::GaussianScene gt = ss::assemble_hidden_gt(cover, hidden, o.gt_tau);
    const ss::ExtractResult res = ss::extract_pipeline(stego, key);
    if (res.found == 0) throw std::runtime_error("no keyed carrier present in the asset");

    const ss::Camera cam = ss::default_camera(o.size, o.size);
    const ss::ImageBuffer img_gt = ss::render(gt, cam);
    const ss::ImageBuffer img_ex = ss::render(res.hidden_scene, cam);
    const ss::ImageBuffer img_cover = ss::render(cover, cam);
    const ss::ImageBuffer img_stego = ss::render(stego, cam);

    std::cout << "carriers found " << res.found << " / missing " << res.missing << "\n";
    std::cout << "psnr stego vs cover: " << ss::psnr(img_stego, img_cover) << " dB\n";
    std::cout << "psnr extracted vs reference: " << ss::psnr(img_ex, img_gt) << " dB\n";
    std::cout << "ssim extracted vs reference: " << ss::ssim(img_ex, img_gt) << "\n";
    return 0;
}

int run_sweep(const SweepOpts& o) {
    ss::SweepConfig cfg;
    cfg.scene.count = o.count;
    cfg.scene.seed = o.seed;
    cfg.scene.floor_min = o.floor_min;
    cfg.scene.floor_max = o.floor_max;
    cfg.train.max_epochs = o.epochs;
    cfg.image_size = o.size;
    cfg.ks = o.ks;
    cfg.taus = o.taus;
    const auto points = ss::run_sweep(cfg);

    std::ofstream csv(o.out);
    if (!csv) throw std::runtime_error("cannot open " + o.out + " for writing");
    csv << "k,tau,carriers,psnr_stego,psnr_hidden\n";
    for (const auto& p : points) {
        csv << p.k << "," << p.tau << "," << p.carriers << "," << std::setprecision(10)
            << p.psnr_stego << "," << p.psnr_hidden << "\n";
    }
    if (!csv) throw std::runtime_error("write failed: " + o.out);

    std::cout << std::left << std::setw(5) << "k" << std::setw(8) << "tau" << std::setw(10)
              << "carriers" << std::setw(14) << "psnr_stego" << "psnr_hidden\n";
    for (const auto& p : points) {
        std::cout << std::left << std::setw(5) << p.k << std::setw(8) << p.tau << std::setw(10)
                  << p.carriers << std::setw(14) << std::setprecision(6) << p.psnr_stego
                  << p.psnr_hidden << "\n";
    }
    std::cout << "wrote " << points.size() << " rows -> " << o.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steganography toolkit for Gaussian-splatting assets"};
    app.require_subcommand(1);

    GenOpts gen;
    auto* cgen = app.add_subcommand("gen", "Generate a synthetic cover/hidden asset pair");
    cgen->add_option("--count", gen.count, "Primitive count")->capture_default_str();
    cgen->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    cgen->add_option("--content-fraction", gen.content_fraction, "Carrier fraction")
        ->capture_default_str();
    cgen->add_option("--floor-min", gen.floor_min, "Hidden opacity floor lower bound")
        ->capture_default_str();
    cgen->add_option("--floor-max", gen.floor_max, "Hidden opacity floor upper bound")
        ->capture_default_str();
    cgen->add_option("--out-cover", gen.out_cover, "Cover asset path")->required();
    cgen->add_option("--out-hidden", gen.out_hidden, "Hidden asset path")->required();

    EmbedOpts emb;
    auto* cemb = app.add_subcommand("embed", "Embed a hidden asset into a cover asset");
    cemb->add_option("--cover", emb.cover, "Cover asset")->required();
    cemb->add_option("--hidden", emb.hidden, "Hidden asset (same positions as cover)")->required();
    cemb->add_option("--out", emb.out, "Stego asset output")->required();
    cemb->add_option("--key", emb.key, "Key file output")->required();
    cemb->add_option("--k", emb.k, "Base bit budget")->capture_default_str();
    cemb->add_option("--tau", emb.tau, "Hidden-opacity carrier threshold")->capture_default_str();
    cemb->add_option("--gamma", emb.gamma, "Quantizer bit depth")->capture_default_str();
    cemb->add_option("--cmax", emb.cmax, "Quantizer clipping range")->capture_default_str();
    cemb->add_option("--epochs", emb.epochs, "Mapper training epochs")->capture_default_str();
    cemb->add_option("--lr", emb.lr, "Mapper learning rate")->capture_default_str();
    cemb->add_option("--target-mse", emb.target_mse, "Early-stop training MSE")
        ->capture_default_str();
    cemb->add_option("--train-seed", emb.train_seed, "Mapper init seed")->capture_default_str();

    ExtractOpts ext;
    auto* cext = app.add_subcommand("extract", "Recover the hidden asset with a key");
    cext->add_option("--stego", ext.stego, "Stego asset")->required();
    cext->add_option("--key", ext.key, "Key file")->required();
    cext->add_option("--out", ext.out, "Extracted asset output")->required();
    cext->add_option("--max-order", ext.max_order, "Highest SH order to keep")
        ->capture_default_str();

    RenderOpts ren;
    auto* cren = app.add_subcommand("render", "Render an asset to a PPM image");
    cren->add_option("--scene", ren.scene, "Asset to render")->required();
    cren->add_option("--out", ren.out, "Output PPM path")->required();
    cren->add_option("--camera", ren.camera, "Camera file (default: canonical front view)");
    cren->add_option("--width", ren.width, "Viewport width without --camera")
        ->capture_default_str();
    cren->add_option("--height", ren.height, "Viewport height without --camera")
        ->capture_default_str();
    cren->add_option("--max-order", ren.max_order, "Highest SH order to evaluate")
        ->capture_default_str();
    cren->add_option("--background", ren.background, "Background RGB")->expected(3);

    AttackOpts att;
    auto* catt = app.add_subcommand("attack", "Degrade an asset (prune-seq, prune-rand, noise)");
    catt->add_option("--in", att.in, "Input asset")->required();
    catt->add_option("--out", att.out, "Output asset")->required();
    catt->add_option("--mode", att.mode, "prune-seq | prune-rand | noise")->required();
    catt->add_option("--ratio", att.ratio, "Prune fraction")->capture_default_str();
    catt->add_option("--sigma", att.sigma, "Noise standard deviation")->capture_default_str();
    catt->add_option("--seed", att.seed, "Attack seed")->capture_default_str();

    VerifyOpts ver;
    auto* cver = app.add_subcommand("verify", "Extract and score against the true hidden asset");
    cver->add_option("--cover", ver.cover, "Cover asset")->required();
    cver->add_option("--hidden", ver.hidden, "True hidden asset")->required();
    cver->add_option("--stego", ver.stego, "Stego asset")->required();
    cver->add_option("--key", ver.key, "Key file")->required();
    cver->add_option("--size", ver.size, "Render size")->capture_default_str();
    cver->add_option("--gt-tau", ver.gt_tau, "Reference carrier threshold")
        ->capture_default_str();

    SweepOpts swp;
    auto* cswp = app.add_subcommand("sweep", "Grid-sweep k and tau on a synthetic pair");
    cswp->add_option("--out", swp.out, "CSV output path")->required();
    cswp->add_option("--count", swp.count, "Primitive count")->capture_default_str();
    cswp->add_option("--seed", swp.seed, "Scene seed")->capture_default_str();
    cswp->add_option("--floor-min", swp.floor_min, "Hidden opacity floor lower bound")
        ->capture_default_str();
    cswp->add_option("--floor-max", swp.floor_max, "Hidden opacity floor upper bound")
        ->capture_default_str();
    cswp->add_option("--epochs", swp.epochs, "Mapper training epochs per cell")
        ->capture_default_str();
    cswp->add_option("--size", swp.size, "Render size")->capture_default_str();
    cswp->add_option("--ks", swp.ks, "Base budgets to sweep")->capture_default_str();
    cswp->add_option("--taus", swp.taus, "Thresholds to sweep")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cgen->parsed()) return run_gen(gen);
        if (cemb->parsed()) return run_embed(emb);
        if (cext->parsed()) return run_extract(ext);
        if (cren->parsed()) return run_render(ren);
        if (catt->parsed()) return run_attack(att);
        if (cver->parsed()) return run_verify(ver);
        if (cswp->parsed()) return run_sweep(swp);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
