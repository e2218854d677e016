#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "splatstego/autoencoder.hpp"
#include "splatstego/sh_stego.hpp"

namespace splatstego {

/// Private extraction key: quantizer/budget parameters, the opacity
/// threshold, the keyed carrier coordinates, and the trained opacity mapper.
struct StegoKey {
    std::uint16_t version = 1;
    StegoParams params;
    double tau = 0.25;
    std::vector<std::array<float, 3>> coords;
    Autoencoder model;
};

/// Binary little-endian "SISK" container:
///   magic[4] version:u16 gamma:u8 k:u8 slots:u8 reserved:u8
///   c_max:f64 tau:f64 count:u64 coords:count*3*f32
///   layers:u16 then per layer in/out/kernel/stride:u16
///   then per layer weights:f32[] bias:f32[]
void write_key(const StegoKey& key, const std::string& path);

/// Validates magic, version, parameter ranges, the fixed mapper topology,
/// and exact length; throws std::runtime_error otherwise.
StegoKey read_key(const std::string& path);

}  // namespace splatstego
