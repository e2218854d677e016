#include "splatstego/key.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace splatstego {

namespace {

constexpr char kMagic[4] = {'S', 'I', 'S', 'K'};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((bits >> (8 * i)) & 0xff));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    put_u64(out, bits);
}

struct Reader {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw std::runtime_error("key file truncated");
    }
    std::uint8_t u8() {
        need(1);
        return buf[pos++];
    }
    std::uint16_t u16() {
        need(2);
        const std::uint16_t v = static_cast<std::uint16_t>(buf[pos] | (buf[pos + 1] << 8));
        pos += 2;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    float f32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[pos + i]) << (8 * i);
        pos += 4;
        return std::bit_cast<float>(v);
    }
    double f64() { return std::bit_cast<double>(u64()); }
};

struct LayerShape {
    int in, out, kernel, stride;
};

// enc1, enc2, dec1, dec2 of the fixed mapper topology.
constexpr LayerShape kLayers[4] = {{1, 8, 5, 2}, {8, 16, 5, 2}, {16, 8, 5, 2}, {8, 1, 5, 2}};

}  // namespace

void write_key(const StegoKey& key, const std::string& path) {
    key.params.validate();
    if (!(key.tau >= 0.0 && key.tau < 1.0))
        throw std::invalid_argument("tau must be in [0,1)");
    if (key.coords.empty()) throw std::invalid_argument("key has no carrier coordinates");

    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    put_u16(out, key.version);
    out.push_back(static_cast<std::uint8_t>(key.params.quant.gamma));
    out.push_back(static_cast<std::uint8_t>(key.params.k));
    out.push_back(static_cast<std::uint8_t>(key.params.n));
    out.push_back(0);  // reserved
    put_f64(out, key.params.quant.c_max);
    put_f64(out, key.tau);
    put_u64(out, key.coords.size());
    for (const auto& c : key.coords)
        for (float v : c) put_f32(out, v);

    const auto ps = key.model.params();
    put_u16(out, 4);
    for (const auto& l : kLayers) {
        put_u16(out, static_cast<std::uint16_t>(l.in));
        put_u16(out, static_cast<std::uint16_t>(l.out));
        put_u16(out, static_cast<std::uint16_t>(l.kernel));
        put_u16(out, static_cast<std::uint16_t>(l.stride));
    }
    for (const auto* p : ps)
        for (double v : *p) put_f32(out, static_cast<float>(v));

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

StegoKey read_key(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open key file " + path);
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
    Reader r{buf};

    r.need(4);
    if (std::memcmp(buf.data(), kMagic, 4) != 0)
        throw std::runtime_error("not a key file (bad magic)");
    r.pos = 4;

    StegoKey key;
    key.version = r.u16();
    if (key.version != 1) throw std::runtime_error("unsupported key version");
    key.params.quant.gamma = r.u8();
    key.params.k = r.u8();
    key.params.n = r.u8();
    r.u8();  // reserved
    key.params.quant.c_max = r.f64();
    key.tau = r.f64();
    try {
        key.params.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("key file has invalid parameters: ") + e.what());
    }
    if (!(key.tau >= 0.0 && key.tau < 1.0)) throw std::runtime_error("key file has invalid tau");

    const std::uint64_t count = r.u64();
    if (count == 0) throw std::runtime_error("key file has no carrier coordinates");
    if (count > (std::uint64_t{1} << 32)) throw std::runtime_error("key coordinate count implausible");
    key.coords.resize(count);
    for (auto& c : key.coords)
        for (float& v : c) v = r.f32();

    const std::uint16_t layers = r.u16();
    if (layers != 4) throw std::runtime_error("key file mapper topology mismatch");
    for (const auto& l : kLayers) {
        const int in = r.u16(), out = r.u16(), kernel = r.u16(), stride = r.u16();
        if (in != l.in || out != l.out || kernel != l.kernel || stride != l.stride)
            throw std::runtime_error("key file mapper topology mismatch");
    }
    for (auto* p : key.model.params())
        for (double& v : *p) v = r.f32();

    if (r.pos != buf.size()) throw std::runtime_error("key file has trailing bytes");
    return key;
}

}  // namespace splatstego
