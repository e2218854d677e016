#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "splatstego/fixedpoint.hpp"
#include "splatstego/scene.hpp"

namespace splatstego {

/// Bit-plane embedding parameters. Slot j of the carrier donates its low
/// k + floor(sqrt(j)) bits; the hidden block is reversed so slot j carries
/// hidden coefficient n-1-j of the same channel.
struct StegoParams {
    int k = 17;
    QuantParams quant{};
    int n = ShBlock::kSlots;

    void validate() const;
};

/// k + floor(sqrt(j)); non-decreasing in j.
int bit_budget(int j, int k);

/// Clears the low b bits.
Code nullify(Code code, int b, int gamma);

/// High (gamma-b) bits from cover, low b bits = hidden's top b bits.
Code embed_coeff(Code cover_code, Code hidden_code, int b, int gamma);

/// Exact algebraic inverse of embed_coeff up to truncation: restores the
/// hidden's top b bits, low (gamma-b) bits zero.
Code extract_coeff(Code stego_code, int b, int gamma);

/// Single-block embed/extract with the graded budgets.
ShBlock embed_block(const ShBlock& cover, const ShBlock& hidden, const StegoParams& params);
ShBlock extract_block(const ShBlock& stego, const StegoParams& params);

/// Embeds hidden SH blocks into the cover's SH fields. Everything except SH
/// is copied bit-identically.
GaussianScene embed_scene(const GaussianScene& cover, const std::vector<ShBlock>& hidden_sh,
                          const StegoParams& params);

/// Per-slot uniform-budget variant (the AVG ablation arm): every slot gets
/// budget b regardless of j; the n-1-j reversal is kept.
GaussianScene embed_scene_uniform(const GaussianScene& cover, const std::vector<ShBlock>& hidden_sh,
                                  const StegoParams& params, int uniform_budget);

std::vector<ShBlock> extract_scene(const GaussianScene& stego, const StegoParams& params);
std::vector<ShBlock> extract_scene_uniform(const GaussianScene& stego, const StegoParams& params,
                                           int uniform_budget);

/// Zeroes every coefficient whose order is not in keep.
ShBlock filter_orders(const ShBlock& sh, const std::set<int>& keep);

}  // namespace splatstego
