#include "splatstego/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace splatstego {

void write_ppm(const ImageBuffer& img, const std::string& path) {
    if (img.width <= 0 || img.height <= 0) throw std::invalid_argument("empty image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width) * 3);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int c = 0; c < 3; ++c) {
                double v = img.at(x, y, c);
                v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
                row[static_cast<std::size_t>(x) * 3 + c] =
                    static_cast<std::uint8_t>(std::lround(v * 255.0));
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

// PPM header tokens are separated by whitespace; '#' starts a comment.
int next_int(std::istream& in, const std::string& path) {
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    if (ch == EOF || !std::isdigit(ch)) throw std::runtime_error("bad PPM header: " + path);
    long v = 0;
    while (ch != EOF && std::isdigit(ch)) {
        v = v * 10 + (ch - '0');
        if (v > 1 << 24) throw std::runtime_error("PPM dimension overflow: " + path);
        ch = in.get();
    }
    if (ch != EOF) in.unget();
    return static_cast<int>(v);
}

}  // namespace

ImageBuffer read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '6') throw std::runtime_error("not a P6 PPM: " + path);
    const int w = next_int(in, path);
    const int h = next_int(in, path);
    const int maxval = next_int(in, path);
    if (maxval != 255) throw std::runtime_error("unsupported PPM maxval: " + path);
    in.get();  // single whitespace byte before the raster
    if (w <= 0 || h <= 0) throw std::runtime_error("bad PPM dimensions: " + path);

    ImageBuffer img(w, h);
    std::vector<std::uint8_t> raw(static_cast<std::size_t>(w) * h * 3);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw std::runtime_error("truncated PPM raster: " + path);
    for (std::size_t i = 0; i < raw.size(); ++i) img.rgb[i] = raw[i] / 255.0;
    return img;
}

}  // namespace splatstego
