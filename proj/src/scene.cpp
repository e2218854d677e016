#include "splatstego/scene.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace splatstego {
namespace {

// Canonical property list of the public 3DGS asset convention, in file order.
// f_rest is channel-major: f_rest_0..14 = R slots 1..15, then G, then B.
std::vector<std::string> property_names() {
    std::vector<std::string> names = {"x", "y", "z", "nx", "ny", "nz"};
    for (int i = 0; i < 3; ++i) names.push_back("f_dc_" + std::to_string(i));
    for (int i = 0; i < 45; ++i) names.push_back("f_rest_" + std::to_string(i));
    names.push_back("opacity");
    for (int i = 0; i < 3; ++i) names.push_back("scale_" + std::to_string(i));
    for (int i = 0; i < 4; ++i) names.push_back("rot_" + std::to_string(i));
    return names;
}

constexpr std::size_t kFloatsPerVertex = 62;

[[noreturn]] void fail(const std::string& what, std::size_t offset) {
    throw std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")");
}

// Reads one '\n'-terminated line; offset advances past the newline.
std::string read_line(const std::vector<std::uint8_t>& bytes, std::size_t& offset) {
    std::size_t start = offset;
    while (offset < bytes.size() && bytes[offset] != '\n') ++offset;
    if (offset >= bytes.size()) fail("malformed header: unterminated line", start);
    std::string line(bytes.begin() + start, bytes.begin() + offset);
    ++offset;
    return line;
}

float read_f32le(const std::uint8_t* p) {
    std::uint32_t u = static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
                      static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
    float f;
    std::memcpy(&f, &u, 4);
    return f;
}

void write_f32le(std::vector<std::uint8_t>& out, float f) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    out.push_back(static_cast<std::uint8_t>(u & 0xff));
    out.push_back(static_cast<std::uint8_t>((u >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((u >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((u >> 24) & 0xff));
}

}  // namespace

void GaussianScene::resize(std::size_t n) {
    count = n;
    positions.assign(3 * n, 0.0f);
    normals.assign(3 * n, 0.0f);
    rotations.assign(4 * n, 0.0f);
    log_scales.assign(3 * n, 0.0f);
    raw_opacities.assign(n, 0.0f);
    sh.assign(n, ShBlock{});
}

bool GaussianScene::consistent() const {
    return positions.size() == 3 * count && normals.size() == 3 * count &&
           rotations.size() == 4 * count && log_scales.size() == 3 * count &&
           raw_opacities.size() == count && sh.size() == count;
}

Activated activate(const GaussianScene& scene) {
    Activated out;
    out.opacities.resize(scene.count);
    out.scales.resize(3 * scene.count);
    for (std::size_t i = 0; i < scene.count; ++i)
        out.opacities[i] = static_cast<float>(sigmoid(scene.raw_opacities[i]));
    for (std::size_t i = 0; i < 3 * scene.count; ++i)
        out.scales[i] = std::exp(scene.log_scales[i]);
    return out;
}

GaussianScene load_scene(const std::vector<std::uint8_t>& bytes) {
    std::size_t off = 0;

    std::size_t line_start = off;
    if (read_line(bytes, off) != "ply") fail("malformed header: expected \"ply\"", line_start);
    line_start = off;
    if (read_line(bytes, off) != "format binary_little_endian 1.0")
        fail("malformed header: expected \"format binary_little_endian 1.0\"", line_start);

    line_start = off;
    std::string element = read_line(bytes, off);
    const std::string prefix = "element vertex ";
    if (element.rfind(prefix, 0) != 0) fail("malformed header: expected \"element vertex N\"", line_start);
    std::size_t n = 0;
    {
        std::string num = element.substr(prefix.size());
        if (num.empty()) fail("malformed header: missing vertex count", line_start);
        for (char ch : num) {
            if (ch < '0' || ch > '9') fail("malformed header: bad vertex count", line_start);
            if (n > (SIZE_MAX - 9) / 10) fail("malformed header: vertex count overflow", line_start);
            n = n * 10 + static_cast<std::size_t>(ch - '0');
        }
    }

    const std::vector<std::string> expected = property_names();
    for (const std::string& name : expected) {
        line_start = off;
        std::string line = read_line(bytes, off);
        if (line != "property float " + name)
            fail("property list mismatch: expected \"property float " + name + "\", got \"" + line + "\"",
                 line_start);
    }
    line_start = off;
    if (read_line(bytes, off) != "end_header") fail("property list mismatch: expected \"end_header\"", line_start);

    const std::size_t need = n * kFloatsPerVertex * 4;
    if (bytes.size() - off < need)
        fail("truncated body: need " + std::to_string(need) + " bytes, have " +
                 std::to_string(bytes.size() - off),
             bytes.size());

    GaussianScene scene;
    scene.resize(n);
    const std::uint8_t* p = bytes.data() + off;
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < 3; ++k, p += 4) scene.positions[3 * i + k] = read_f32le(p);
        for (int k = 0; k < 3; ++k, p += 4) scene.normals[3 * i + k] = read_f32le(p);
        for (int ch = 0; ch < 3; ++ch, p += 4) scene.sh[i].at(ch, 0) = read_f32le(p);
        for (int ch = 0; ch < 3; ++ch)
            for (int j = 1; j < ShBlock::kSlots; ++j, p += 4) scene.sh[i].at(ch, j) = read_f32le(p);
        scene.raw_opacities[i] = read_f32le(p), p += 4;
        for (int k = 0; k < 3; ++k, p += 4) scene.log_scales[3 * i + k] = read_f32le(p);
        for (int k = 0; k < 4; ++k, p += 4) scene.rotations[4 * i + k] = read_f32le(p);
    }
    return scene;
}

std::vector<std::uint8_t> save_scene(const GaussianScene& scene) {
    if (!scene.consistent()) throw std::invalid_argument("save_scene: inconsistent scene arrays");

    std::ostringstream header;
    header << "ply\nformat binary_little_endian 1.0\nelement vertex " << scene.count << "\n";
    for (const std::string& name : property_names()) header << "property float " << name << "\n";
    header << "end_header\n";

    std::vector<std::uint8_t> out;
    out.reserve(header.str().size() + scene.count * kFloatsPerVertex * 4);
    for (char ch : header.str()) out.push_back(static_cast<std::uint8_t>(ch));

    for (std::size_t i = 0; i < scene.count; ++i) {
        for (int k = 0; k < 3; ++k) write_f32le(out, scene.positions[3 * i + k]);
        for (int k = 0; k < 3; ++k) write_f32le(out, scene.normals[3 * i + k]);
        for (int ch = 0; ch < 3; ++ch) write_f32le(out, scene.sh[i].at(ch, 0));
        for (int ch = 0; ch < 3; ++ch)
            for (int j = 1; j < ShBlock::kSlots; ++j) write_f32le(out, scene.sh[i].at(ch, j));
        write_f32le(out, scene.raw_opacities[i]);
        for (int k = 0; k < 3; ++k) write_f32le(out, scene.log_scales[3 * i + k]);
        for (int k = 0; k < 4; ++k) write_f32le(out, scene.rotations[4 * i + k]);
    }
    return out;
}

GaussianScene load_scene_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return load_scene(bytes);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_scene_file(const GaussianScene& scene, const std::string& path) {
    std::vector<std::uint8_t> bytes = save_scene(scene);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace splatstego
