#include "splatstego/sh_stego.hpp"

#include <stdexcept>

namespace splatstego {
namespace {

Code low_mask(int b) { return b == 0 ? 0 : (~Code{0} >> (64 - b)); }

using CoeffCodec = std::pair<int, int>;  // (budget b, gamma)

GaussianScene embed_impl(const GaussianScene& cover, const std::vector<ShBlock>& hidden_sh,
                         const StegoParams& params, const int budgets[ShBlock::kSlots]) {
    if (hidden_sh.size() != cover.count)
        throw std::invalid_argument("embed_scene: hidden block count does not match cover");
    const int n = params.n;
    const int gamma = params.quant.gamma;
    GaussianScene out = cover;
    for (std::size_t i = 0; i < cover.count; ++i) {
        for (int ch = 0; ch < ShBlock::kChannels; ++ch) {
            for (int j = 0; j < n; ++j) {
                const Code c = quantize(cover.sh[i].at(ch, j), params.quant);
                const Code h = quantize(hidden_sh[i].at(ch, n - 1 - j), params.quant);
                const Code fused = embed_coeff(c, h, budgets[j], gamma);
                out.sh[i].at(ch, j) = dequantize(fused, params.quant);
            }
        }
    }
    return out;
}

std::vector<ShBlock> extract_impl(const GaussianScene& stego, const StegoParams& params,
                                  const int budgets[ShBlock::kSlots]) {
    const int n = params.n;
    const int gamma = params.quant.gamma;
    std::vector<ShBlock> hidden(stego.count);
    for (std::size_t i = 0; i < stego.count; ++i) {
        for (int ch = 0; ch < ShBlock::kChannels; ++ch) {
            for (int j = 0; j < n; ++j) {
                const Code w = quantize(stego.sh[i].at(ch, j), params.quant);
                const Code h = extract_coeff(w, budgets[j], gamma);
                hidden[i].at(ch, n - 1 - j) = dequantize(h, params.quant);
            }
        }
    }
    return hidden;
}

}  // namespace

void StegoParams::validate() const {
    quant.validate();
    if (n != ShBlock::kSlots) throw std::invalid_argument("StegoParams: n must be 16");
    if (k < 1) throw std::invalid_argument("StegoParams: k must be >= 1");
    if (k + ShBlock::order(n - 1) > quant.gamma)
        throw std::invalid_argument("StegoParams: bit budget k + floor(sqrt(n-1)) exceeds gamma");
}

int bit_budget(int j, int k) {
    if (j < 0 || j >= ShBlock::kSlots) throw std::invalid_argument("bit_budget: slot index out of range");
    return k + ShBlock::order(j);
}

Code nullify(Code code, int b, int gamma) { return (code & ~low_mask(b)) & low_mask(gamma); }

Code embed_coeff(Code cover_code, Code hidden_code, int b, int gamma) {
    return nullify(cover_code, b, gamma) ^ ((hidden_code & low_mask(gamma)) >> (gamma - b));
}

Code extract_coeff(Code stego_code, int b, int gamma) {
    return (stego_code & low_mask(b)) << (gamma - b);
}

ShBlock embed_block(const ShBlock& cover, const ShBlock& hidden, const StegoParams& params) {
    params.validate();
    const int gamma = params.quant.gamma;
    ShBlock out;
    for (int ch = 0; ch < ShBlock::kChannels; ++ch) {
        for (int j = 0; j < params.n; ++j) {
            const Code c = quantize(cover.at(ch, j), params.quant);
            const Code h = quantize(hidden.at(ch, params.n - 1 - j), params.quant);
            out.at(ch, j) = dequantize(embed_coeff(c, h, bit_budget(j, params.k), gamma),
                                       params.quant);
        }
    }
    return out;
}

ShBlock extract_block(const ShBlock& stego, const StegoParams& params) {
    params.validate();
    const int gamma = params.quant.gamma;
    ShBlock out;
    for (int ch = 0; ch < ShBlock::kChannels; ++ch) {
        for (int j = 0; j < params.n; ++j) {
            const Code w = quantize(stego.at(ch, j), params.quant);
            out.at(ch, params.n - 1 - j) =
                dequantize(extract_coeff(w, bit_budget(j, params.k), gamma), params.quant);
        }
    }
    return out;
}

GaussianScene embed_scene(const GaussianScene& cover, const std::vector<ShBlock>& hidden_sh,
                          const StegoParams& params) {
    params.validate();
    int budgets[ShBlock::kSlots];
    for (int j = 0; j < params.n; ++j) budgets[j] = bit_budget(j, params.k);
    return embed_impl(cover, hidden_sh, params, budgets);
}

GaussianScene embed_scene_uniform(const GaussianScene& cover, const std::vector<ShBlock>& hidden_sh,
                                  const StegoParams& params, int uniform_budget) {
    params.validate();
    if (uniform_budget < 1 || uniform_budget > params.quant.gamma)
        throw std::invalid_argument("embed_scene_uniform: budget out of range");
    int budgets[ShBlock::kSlots];
    for (int j = 0; j < params.n; ++j) budgets[j] = uniform_budget;
    return embed_impl(cover, hidden_sh, params, budgets);
}

std::vector<ShBlock> extract_scene(const GaussianScene& stego, const StegoParams& params) {
    params.validate();
    int budgets[ShBlock::kSlots];
    for (int j = 0; j < params.n; ++j) budgets[j] = bit_budget(j, params.k);
    return extract_impl(stego, params, budgets);
}

std::vector<ShBlock> extract_scene_uniform(const GaussianScene& stego, const StegoParams& params,
                                           int uniform_budget) {
    params.validate();
    if (uniform_budget < 1 || uniform_budget > params.quant.gamma)
        throw std::invalid_argument("extract_scene_uniform: budget out of range");
    int budgets[ShBlock::kSlots];
    for (int j = 0; j < params.n; ++j) budgets[j] = uniform_budget;
    return extract_impl(stego, params, budgets);
}

ShBlock filter_orders(const ShBlock& sh, const std::set<int>& keep) {
    ShBlock out = sh;
    for (int ch = 0; ch < ShBlock::kChannels; ++ch)
        for (int j = 0; j < ShBlock::kSlots; ++j)
            if (keep.find(ShBlock::order(j)) == keep.end()) out.at(ch, j) = 0.0f;
    return out;
}

}  // namespace splatstego
